#include "compplan_cli/app.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <optional>
#include <ostream>

#include "compplan/error.hpp"
#include "compplan/planner.hpp"
#include "compplan_cli/commands.hpp"
#include "compplan_cli/config.hpp"

namespace compplan::cli {

namespace {

struct Flags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<int> threads;
    std::optional<std::string> out;
    std::optional<std::string> engine;
    std::optional<double> pitch;
    std::optional<double> spacing;
    std::optional<std::string> grid;
    std::optional<std::string> antennas;
    std::vector<std::string> overrides;
};

void add_common(CLI::App& sub, Flags& f) {
    sub.add_option("--config", f.config_path, "flat key = value config file");
    sub.add_option("--seed", f.seed, "RNG seed");
    sub.add_option("--trials", f.trials, "Monte Carlo trials");
    sub.add_option("--threads", f.threads, "worker threads (results do not depend on it)");
    sub.add_option("--out", f.out, "output CSV path (default: stdout)");
    sub.add_option("--engine", f.engine, "analytic or mc");
    sub.add_option("--set", f.overrides, "override a config key, as key=value")->take_all();
}

// Applies command-line flags over the loaded config; flags win.
RunConfig effective_config(const Flags& f) {
    RunConfig cfg = f.config_path.empty() ? RunConfig{} : load_config_file(f.config_path);
    for (const std::string& kv : f.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError(fmt::format("--set expects key=value, got '{}'", kv));
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1), "--set: ");
    }
    if (f.seed) cfg.seed = *f.seed;
    if (f.trials) cfg.trials = *f.trials;
    if (f.threads) cfg.threads = *f.threads;
    if (f.out) cfg.output_path = *f.out;
    if (f.engine) cfg.set("engine", *f.engine, "--engine: ");
    if (f.pitch) {
        if (!(*f.pitch > 0.0)) throw ConfigError(fmt::format("--pitch must be positive, got {}", *f.pitch));
        cfg.contour_pitch_m = *f.pitch;
    }
    if (f.spacing) cfg.contour_spacing_m = *f.spacing;
    if (f.antennas) cfg.set("curve_antennas", *f.antennas, "--antennas: ");
    if (f.grid) {
        // lo:hi:points
        const std::string& g = *f.grid;
        const auto c1 = g.find(':');
        const auto c2 = c1 == std::string::npos ? c1 : g.find(':', c1 + 1);
        if (c2 == std::string::npos) throw ConfigError(fmt::format("--grid expects lo:hi:points, got '{}'", g));
        cfg.set("curve_density_min", g.substr(0, c1), "--grid: ");
        cfg.set("curve_density_max", g.substr(c1 + 1, c2 - c1 - 1), "--grid: ");
        cfg.set("curve_points", g.substr(c2 + 1), "--grid: ");
    }
    cfg.validate();
    return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Uplink CoMP rate coverage and BS density planning"};
    app.require_subcommand(1);
    Flags f;

    CLI::App* plan = app.add_subcommand("plan", "least BS density meeting the worst-point RCP target");
    CLI::App* curve = app.add_subcommand("curve", "worst-point RCP versus BS density, one table per M");
    CLI::App* contour = app.add_subcommand("contour", "RCP over the cooperation region");
    CLI::App* compare = app.add_subcommand("compare", "required density for N = 1, 2, 3");
    CLI::App* validate = app.add_subcommand("validate", "closed forms against the Monte Carlo oracle");
    for (CLI::App* sub : {plan, curve, contour, compare, validate}) add_common(*sub, f);
    curve->add_option("--grid", f.grid, "density grid lo:hi:points (BS/m^2, linear)");
    curve->add_option("--antennas", f.antennas, "comma-separated antenna counts");
    contour->add_option("--pitch", f.pitch, "grid pitch in m (default D/100)");
    contour->add_option("--spacing", f.spacing, "BS spacing D in m (default: planned)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const RunConfig cfg = effective_config(f);
        if (plan->parsed()) return cmd_plan(cfg, out, err);
        if (curve->parsed()) return cmd_curve(cfg, out, err);
        if (contour->parsed()) return cmd_contour(cfg, out, err);
        if (compare->parsed()) return cmd_compare(cfg, out, err);
        return cmd_validate(cfg, out, err);
    } catch (const ConfigError& e) {
        fmt::print(err, "config error: {}\n", e.what());
    } catch (const InfeasibleUsers& e) {
        fmt::print(err, "config error: {}\n", e.what());
    } catch (const UnsupportedOrder& e) {
        fmt::print(err, "config error: {}\n", e.what());
    } catch (const DomainError& e) {
        fmt::print(err, "config error: {}\n", e.what());
    } catch (const InfeasibleTarget& e) {
        fmt::print(err, "infeasible: {}\n", e.what());
        return kExitInfeasible;
    }
    return kExitUsage;
}

}  // namespace compplan::cli
