#include "compplan_cli/config.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <sstream>

namespace compplan::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& where, const std::string& key, const std::string& value,
                            const char* expected) {
    throw ConfigError(fmt::format("{}invalid value '{}' for key '{}' (expected {})", where, value, key, expected));
}

double parse_double(const std::string& where, const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) bad_value(where, key, value, "a number");
    return out;
}

template <class Int>
Int parse_int(const std::string& where, const std::string& key, const std::string& value) {
    Int out = 0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) bad_value(where, key, value, "an integer");
    return out;
}

std::optional<double> parse_auto(const std::string& where, const std::string& key, const std::string& value) {
    if (value == "auto") return std::nullopt;
    return parse_double(where, key, value);
}

std::string fmt_num(double v) { return fmt::format("{:.12g}", v); }

std::string fmt_auto(const std::optional<double>& v) { return v ? fmt_num(*v) : "auto"; }

}  // namespace

const char* to_string(Engine engine) { return engine == Engine::analytic ? "analytic" : "mc"; }

void RunConfig::set(const std::string& key, const std::string& value, const std::string& where) {
    if (key == "a_db") {
        budget.a_db = parse_double(where, key, value);
    } else if (key == "b_db_per_decade") {
        budget.b_db_per_decade = parse_double(where, key, value);
    } else if (key == "sigma_L_db") {
        budget.sigma_L_db = parse_double(where, key, value);
    } else if (key == "user_power_dbm") {
        budget.user_power_dbm = parse_double(where, key, value);
    } else if (key == "noise_power_dbm") {
        budget.noise_power_dbm = parse_double(where, key, value);
    } else if (key == "antennas_per_bs") {
        budget.antennas_per_bs = parse_int<int>(where, key, value);
    } else if (key == "carrier_ghz") {
        carrier_ghz = parse_double(where, key, value);
    } else if (key == "coop_order") {
        coop_order = parse_int<int>(where, key, value);
    } else if (key == "users") {
        users = parse_int<int>(where, key, value);
    } else if (key == "threshold_t") {
        threshold_t = parse_double(where, key, value);
    } else if (key == "target_rcp") {
        target_rcp = parse_double(where, key, value);
    } else if (key == "trials") {
        trials = parse_int<long>(where, key, value);
    } else if (key == "seed") {
        seed = parse_int<std::uint64_t>(where, key, value);
    } else if (key == "threads") {
        threads = parse_int<int>(where, key, value);
    } else if (key == "output_path") {
        output_path = value;
    } else if (key == "engine") {
        if (value == "analytic") {
            engine = Engine::analytic;
        } else if (value == "mc") {
            engine = Engine::mc;
        } else {
            bad_value(where, key, value, "analytic or mc");
        }
    } else if (key == "rcp_tol") {
        planner.rcp_tol = parse_double(where, key, value);
    } else if (key == "spacing_lo_m") {
        planner.spacing_lo_m = parse_double(where, key, value);
    } else if (key == "spacing_hi_m") {
        planner.spacing_hi_m = parse_double(where, key, value);
    } else if (key == "curve_density_min") {
        curve_density_min = parse_double(where, key, value);
    } else if (key == "curve_density_max") {
        curve_density_max = parse_double(where, key, value);
    } else if (key == "curve_points") {
        curve_points = parse_int<int>(where, key, value);
    } else if (key == "curve_antennas") {
        std::vector<int> list;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) list.push_back(parse_int<int>(where, key, trim(item)));
        if (list.empty()) bad_value(where, key, value, "a comma-separated list of antenna counts");
        curve_antennas = std::move(list);
    } else if (key == "contour_spacing_m") {
        contour_spacing_m = parse_auto(where, key, value);
    } else if (key == "contour_pitch_m") {
        contour_pitch_m = parse_auto(where, key, value);
    } else {
        throw ConfigError(fmt::format("{}unknown config key '{}'", where, key));
    }
}

void RunConfig::validate() const {
    auto fail = [](const char* key, const std::string& why) {
        throw ConfigError(fmt::format("invalid setting '{}': {}", key, why));
    };
    if (!(budget.b_db_per_decade > 0.0)) fail("b_db_per_decade", "must be positive");
    if (!(budget.sigma_L_db >= 0.0)) fail("sigma_L_db", "must be non-negative");
    if (budget.antennas_per_bs < 1) fail("antennas_per_bs", "must be at least 1");
    if (coop_order < 1 || coop_order > 3) fail("coop_order", "must be 1, 2 or 3");
    if (users < 1) fail("users", "must be at least 1");
    if (!(threshold_t > 0.0)) fail("threshold_t", "must be positive");
    if (!(target_rcp > 0.0 && target_rcp < 1.0)) fail("target_rcp", "must lie in the open interval (0, 1)");
    if (trials < 1) fail("trials", "must be at least 1");
    if (threads < 1) fail("threads", "must be at least 1");
    if (!(planner.rcp_tol > 0.0)) fail("rcp_tol", "must be positive");
    if (!(planner.spacing_lo_m > 0.0 && planner.spacing_hi_m > planner.spacing_lo_m)) {
        fail("spacing_lo_m", "bracket must satisfy 0 < spacing_lo_m < spacing_hi_m");
    }
    if (!(curve_density_min > 0.0 && curve_density_max >= curve_density_min)) {
        fail("curve_density_min", "grid must satisfy 0 < min <= max");
    }
    if (curve_points < 1) fail("curve_points", "must be at least 1");
    for (int m : curve_antennas) {
        if (m < 1) fail("curve_antennas", "antenna counts must be at least 1");
    }
    if (contour_spacing_m && !(*contour_spacing_m > 0.0)) fail("contour_spacing_m", "must be positive or auto");
    if (contour_pitch_m && !(*contour_pitch_m > 0.0)) fail("contour_pitch_m", "must be positive or auto");
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
    std::string antennas;
    for (std::size_t i = 0; i < curve_antennas.size(); ++i) {
        antennas += (i ? "," : "") + std::to_string(curve_antennas[i]);
    }
    return {
        {"a_db", fmt_num(budget.a_db)},
        {"b_db_per_decade", fmt_num(budget.b_db_per_decade)},
        {"sigma_L_db", fmt_num(budget.sigma_L_db)},
        {"user_power_dbm", fmt_num(budget.user_power_dbm)},
        {"noise_power_dbm", fmt_num(budget.noise_power_dbm)},
        {"antennas_per_bs", std::to_string(budget.antennas_per_bs)},
        {"carrier_ghz", fmt_num(carrier_ghz)},
        {"coop_order", std::to_string(coop_order)},
        {"users", std::to_string(users)},
        {"threshold_t", fmt_num(threshold_t)},
        {"target_rcp", fmt_num(target_rcp)},
        {"trials", std::to_string(trials)},
        {"seed", std::to_string(seed)},
        {"engine", to_string(engine)},
        {"rcp_tol", fmt_num(planner.rcp_tol)},
        {"spacing_lo_m", fmt_num(planner.spacing_lo_m)},
        {"spacing_hi_m", fmt_num(planner.spacing_hi_m)},
        {"curve_density_min", fmt_num(curve_density_min)},
        {"curve_density_max", fmt_num(curve_density_max)},
        {"curve_points", std::to_string(curve_points)},
        {"curve_antennas", antennas},
        {"contour_spacing_m", fmt_auto(contour_spacing_m)},
        {"contour_pitch_m", fmt_auto(contour_pitch_m)},
    };
}

PlanQuery RunConfig::plan_query() const {
    PlanQuery q;
    q.coop_order = coop_order;
    q.users = users;
    q.threshold_t = threshold_t;
    q.target_rcp = target_rcp;
    q.budget = budget;
    q.options = planner;
    return q;
}

RunConfig load_config(std::istream& in, const std::string& source_name) {
    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) continue;
        const std::string where = fmt::format("{}:{}: ", source_name, line_no);
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(fmt::format("{}expected 'key = value', got '{}'", where, body));
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigError(fmt::format("{}missing key before '='", where));
        cfg.set(key, value, where);
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
    return load_config(in, path);
}

}  // namespace compplan::cli
