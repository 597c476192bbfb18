#include "compplan_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>

#include "compplan/analytic.hpp"
#include "compplan/error.hpp"
#include "compplan/geometry.hpp"
#include "compplan/montecarlo.hpp"
#include "compplan/planner.hpp"

namespace compplan::cli {

namespace {

std::string num(double v) { return fmt::format("{:.12g}", v); }

// Runs `emit` against the configured output file, or `fallback` when no
// output path is set.
void with_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& emit) {
    if (path.empty()) {
        emit(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError(fmt::format("cannot open output file '{}'", path));
    emit(file);
    file.flush();
    if (!file) throw ConfigError(fmt::format("failed writing output file '{}'", path));
}

std::string path_with_suffix(const std::string& path, const std::string& suffix) {
    const std::filesystem::path p(path);
    std::filesystem::path out = p.parent_path() / (p.stem().string() + suffix + p.extension().string());
    return out.string();
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    std::vector<double> grid;
    if (points == 1) return {lo};
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    return grid;
}

void report_infeasible(std::ostream& log, const InfeasibleTarget& e, double target) {
    fmt::print(log, "infeasible: worst-point RCP {:.6g} at the minimum spacing {} m is below the target {}\n",
               e.rcp_at_min_spacing(), e.min_spacing(), target);
}

const char* pass_fail(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

void write_header(std::ostream& os, const std::string& command, const RunConfig& cfg) {
    fmt::print(os, "# compplan {}\n", command);
    for (const auto& [key, value] : cfg.entries()) fmt::print(os, "# {} = {}\n", key, value);
}

int cmd_plan(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    PlanResult r;
    try {
        r = required_density(cfg.plan_query());
    } catch (const InfeasibleTarget& e) {
        report_infeasible(log, e, cfg.target_rcp);
        return kExitInfeasible;
    }
    fmt::print(log, "lambda = {:.6g} BS/m^2, D = {:.6g} m, worst-point RCP = {:.6g} ({} iterations{})\n",
               r.density, r.spacing, r.achieved_rcp, r.iterations,
               r.slack ? ", target already met at the widest spacing" : "");
    with_output(cfg.output_path, out, [&](std::ostream& os) {
        write_header(os, "plan", cfg);
        os << "coop_order,users,antennas_per_bs,threshold_t,target_rcp,spacing_m,density_per_m2,achieved_rcp,"
              "iterations,bracket_lo_m,bracket_hi_m,slack\n";
        fmt::print(os, "{},{},{},{},{},{},{},{},{},{},{},{}\n", cfg.coop_order, cfg.users,
                   cfg.budget.antennas_per_bs, num(cfg.threshold_t), num(cfg.target_rcp), num(r.spacing),
                   num(r.density), num(r.achieved_rcp), r.iterations, num(r.bracket_lo), num(r.bracket_hi),
                   r.slack ? 1 : 0);
    });
    return kExitOk;
}

int cmd_curve(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const std::vector<double> grid = linear_grid(cfg.curve_density_min, cfg.curve_density_max, cfg.curve_points);
    for (int m : cfg.curve_antennas) {
        RunConfig per_m = cfg;
        per_m.budget.antennas_per_bs = m;
        const std::vector<CurvePoint> curve = rcp_density_curve(per_m.plan_query(), grid);
        const std::string path =
            cfg.output_path.empty() ? std::string{} : path_with_suffix(cfg.output_path, fmt::format("_M{}", m));
        with_output(path, out, [&](std::ostream& os) {
            write_header(os, "curve", per_m);
            os << "density,spacing,worst_rcp,M\n";
            for (const CurvePoint& p : curve) {
                fmt::print(os, "{},{},{},{}\n", num(p.density), num(p.spacing), num(p.worst_rcp), m);
            }
        });
        if (!path.empty()) fmt::print(log, "wrote {} ({} points)\n", path, curve.size());
    }
    return kExitOk;
}

int cmd_contour(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    RunConfig eff = cfg;
    if (!eff.contour_spacing_m) {
        try {
            eff.contour_spacing_m = required_density(cfg.plan_query()).spacing;
        } catch (const InfeasibleTarget& e) {
            report_infeasible(log, e, cfg.target_rcp);
            return kExitInfeasible;
        }
    }
    if (!eff.contour_pitch_m) eff.contour_pitch_m = *eff.contour_spacing_m / 100.0;

    const CoopRegion region = build_coop_region(eff.coop_order, *eff.contour_spacing_m);
    ContourOptions opts;
    opts.engine = eff.engine == Engine::analytic ? ContourEngine::analytic : ContourEngine::mc_exact;
    opts.trials = eff.trials;
    opts.seed = eff.seed;
    opts.threads = eff.threads;
    const std::vector<ContourPoint> grid =
        rcp_contour(region, eff.users, eff.budget, eff.threshold_t, *eff.contour_pitch_m, opts);

    const bool with_ci = eff.engine == Engine::mc;
    with_output(eff.output_path, out, [&](std::ostream& os) {
        write_header(os, "contour", eff);
        os << (with_ci ? "x,y,rcp,ci_lo,ci_hi\n" : "x,y,rcp\n");
        for (const ContourPoint& p : grid) {
            if (with_ci) {
                fmt::print(os, "{},{},{},{},{}\n", num(p.x), num(p.y), num(p.rcp), num(p.ci_lo), num(p.ci_hi));
            } else {
                fmt::print(os, "{},{},{}\n", num(p.x), num(p.y), num(p.rcp));
            }
        }
    });
    const auto lowest = std::min_element(grid.begin(), grid.end(),
                                         [](const ContourPoint& a, const ContourPoint& b) { return a.rcp < b.rcp; });
    if (lowest != grid.end()) {
        fmt::print(log, "{} grid points at D = {:.6g} m; lowest RCP {:.6g} at ({:.4g}, {:.4g})\n", grid.size(),
                   *eff.contour_spacing_m, lowest->rcp, lowest->x, lowest->y);
    }
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    struct Row {
        int order;
        const char* status;  // nullptr when a plan was found
        PlanResult result;
    };
    std::vector<Row> rows;
    for (int order = 1; order <= 3; ++order) {
        PlanQuery q = cfg.plan_query();
        q.coop_order = order;
        try {
            rows.push_back({order, nullptr, required_density(q)});
        } catch (const InfeasibleTarget& e) {
            fmt::print(log, "N = {}: ", order);
            report_infeasible(log, e, cfg.target_rcp);
            rows.push_back({order, "infeasible", {}});
        } catch (const InfeasibleUsers& e) {
            fmt::print(log, "N = {}: {}\n", order, e.what());
            rows.push_back({order, "too_many_users", {}});
        }
    }
    const double base = rows.front().status ? 0.0 : rows.front().result.density;
    bool all_feasible = true;
    with_output(cfg.output_path, out, [&](std::ostream& os) {
        write_header(os, "compare", cfg);
        os << "N,required_density,ratio_vs_N1,spacing_m,achieved_rcp,status\n";
        for (const Row& r : rows) {
            if (r.status) {
                all_feasible = false;
                fmt::print(os, "{},nan,nan,nan,nan,{}\n", r.order, r.status);
                continue;
            }
            const std::string ratio = base > 0.0 ? num(r.result.density / base) : "nan";
            fmt::print(os, "{},{},{},{},{},{}\n", r.order, num(r.result.density), ratio, num(r.result.spacing),
                       num(r.result.achieved_rcp), r.result.slack ? "slack" : "ok");
        }
    });
    return all_feasible ? kExitOk : kExitInfeasible;
}

double ergodic_grid_max_error() {
    double worst = 0.0;
    for (double a : kErgodicGridA) {
        for (double b : kErgodicGridB) {
            const ProductSnrParams p{a, b};
            worst = std::max(worst, std::abs(ergodic_sum_rate(p) - ergodic_sum_rate_quadrature(p)));
        }
    }
    return worst;
}

double q_series_max_error() {
    double worst = 0.0;
    for (int i = 0; i <= 8000; ++i) {
        const double x = 1e-3 * i;
        worst = std::max(worst, std::abs(q_series(x) - q_exact(x)));
    }
    return worst;
}

ValidationReport run_validation(const RunConfig& cfg) {
    constexpr double kPathSlack = 1e-9;
    ValidationReport rep;
    rep.spacing_m = required_density(cfg.plan_query()).spacing;

    const CoopRegion region = build_coop_region(cfg.coop_order, rep.spacing_m);
    const Point2D worst = worst_point(region);
    TrialConfig tc;
    tc.region = region;
    tc.user_positions.assign(static_cast<std::size_t>(cfg.users), worst);
    tc.budget = cfg.budget;
    tc.trials = cfg.trials;
    tc.seed = cfg.seed;
    const RateCampaign campaign = run_rate_campaign(tc, cfg.threads);
    rep.redraws = campaign.redraws;
    const double u = static_cast<double>(cfg.users);

    auto add = [&rep](ValidationRow row) { rep.rows.push_back(std::move(row)); };

    add({"spacing_m", "planned", num(rep.spacing_m), "", "", "", "info"});

    for (double t : kValidationThresholds) {
        const double analytic = worst_user_rcp(t, region, cfg.users, cfg.budget);
        const double empirical = estimate_rcp(campaign.samples, u * t, RateKind::hadamard).mean;
        const double diff = std::abs(analytic - empirical);
        add({"rcp_hadamard_fit", fmt::format("t={}", num(t)), num(analytic), num(empirical), num(diff), "0.03",
             pass_fail(diff < 0.03)});
    }
    {
        const double analytic = worst_user_rcp(cfg.threshold_t, region, cfg.users, cfg.budget);
        const EmpiricalEstimate exact = estimate_rcp(campaign.samples, u * cfg.threshold_t, RateKind::exact);
        add({"rcp_exact", fmt::format("t={}", num(cfg.threshold_t)), num(analytic), num(exact.mean),
             num(exact.mean - analytic), "", "info"});
    }
    {
        const std::vector<double> d = distances_to_bss(worst, region);
        const SnrDistribution fit = snr_lognormal_fit(d, cfg.budget);
        const std::vector<double> logs =
            sample_log_snr(d, cfg.budget, cfg.trials, cfg.seed ^ 0x9E3779B97F4A7C15ULL, cfg.threads);
        const double ks = ks_distance_normal(logs, fit.mu, fit.sigma);
        add({"ks_log_snr", "worst_point", "", num(ks), "", "0.03", pass_fail(ks < 0.03)});
    }
    {
        long lower_exact = 0;
        long lower_hadamard = 0;
        for (const RateSample& s : campaign.samples) {
            if (s.r_lower > s.r_exact + kPathSlack) ++lower_exact;
            if (s.r_lower > s.r_hadamard + kPathSlack) ++lower_hadamard;
        }
        add({"bound_lower_le_exact", "violations", "", std::to_string(lower_exact), "", "0",
             pass_fail(lower_exact == 0)});
        add({"bound_lower_le_hadamard", "violations", "", std::to_string(lower_hadamard), "", "0",
             pass_fail(lower_hadamard == 0)});
    }
    {
        const double err = ergodic_grid_max_error();
        add({"ergodic_closed_vs_quadrature", "grid_max", "", "", num(err), "0.005", pass_fail(err < 5e-3)});
        const double eps = q_series_max_error();
        add({"q_series_error", "max_on_0_8", "", "", num(eps), "0.01", pass_fail(eps < 1e-2)});
    }
    {
        const double analytic = worst_user_ergodic(region, cfg.users, cfg.budget) * u;
        const double hadamard = estimate_mean(campaign.samples, RateKind::hadamard).mean;
        const double rel = std::abs(analytic - hadamard) / std::abs(hadamard);
        add({"ergodic_hadamard", "sum_rate", num(analytic), num(hadamard), num(rel), "0.1", pass_fail(rel < 0.1)});
        const double exact = estimate_mean(campaign.samples, RateKind::exact).mean;
        add({"ergodic_exact", "sum_rate", num(analytic), num(exact), num(exact - analytic), "", "info"});
    }
    add({"redraws", "count", "", std::to_string(campaign.redraws), "", "", "info"});

    // Regime map: how often the Hadamard surrogate sits below the exact rate
    // as the serving distances shrink or grow.
    const long regime_trials = std::max(1000L, cfg.trials / 10);
    for (double factor : {0.1, 0.25, 0.5, 1.0, 2.0, 4.0}) {
        TrialConfig rc = tc;
        rc.region = build_coop_region(cfg.coop_order, rep.spacing_m * factor);
        rc.user_positions.assign(static_cast<std::size_t>(cfg.users), worst_point(rc.region));
        rc.trials = regime_trials;
        const RateCampaign c = run_rate_campaign(rc, cfg.threads);
        const double dist = distances_to_bss(rc.user_positions.front(), rc.region).front();
        add({"regime_hadamard_below_exact", fmt::format("distance_m={}", num(dist)), "",
             num(fraction_hadamard_below_exact(c.samples)), "", "", "info"});
    }
    return rep;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    ValidationReport rep;
    try {
        rep = run_validation(cfg);
    } catch (const InfeasibleTarget& e) {
        report_infeasible(log, e, cfg.target_rcp);
        return kExitInfeasible;
    }
    with_output(cfg.output_path, out, [&](std::ostream& os) {
        write_header(os, "validate", cfg);
        os << "check,param,analytic,empirical,diff,limit,status\n";
        for (const ValidationRow& r : rep.rows) {
            fmt::print(os, "{},{},{},{},{},{},{}\n", r.check, r.param, r.analytic, r.empirical, r.diff, r.limit,
                       r.status);
        }
    });
    int failed = 0;
    fmt::print(log, "validation at N = {}, U = {}, M = {}, D = {:.6g} m, {} trials, seed {}\n", cfg.coop_order,
               cfg.users, cfg.budget.antennas_per_bs, rep.spacing_m, cfg.trials, cfg.seed);
    for (const ValidationRow& r : rep.rows) {
        if (r.status == "fail") ++failed;
        std::string value;
        for (const auto& [label, v] : {std::pair{"analytic", &r.analytic}, std::pair{"empirical", &r.empirical},
                                       std::pair{"diff", &r.diff}}) {
            if (!v->empty()) value += fmt::format("{}{} {}", value.empty() ? "" : ", ", label, *v);
        }
        fmt::print(log, "  [{:>4}] {} {}: {}{}\n", r.status, r.check, r.param, value,
                   r.limit.empty() ? "" : fmt::format(" (limit {})", r.limit));
    }
    fmt::print(log, "{} gate(s) failed, {} redraw(s)\n", failed, rep.redraws);
    return kExitOk;
}

}  // namespace compplan::cli
