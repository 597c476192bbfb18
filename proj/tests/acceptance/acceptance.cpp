// Acceptance suite: one pass/fail line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion K   run criterion K only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "compplan/analytic.hpp"
#include "compplan/error.hpp"
#include "compplan/geometry.hpp"
#include "compplan/montecarlo.hpp"
#include "compplan/planner.hpp"
#include "compplan/rng.hpp"
#include "compplan_cli/app.hpp"
#include "compplan_cli/commands.hpp"
#include "oracles.hpp"

using namespace compplan;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

// The operating point of the planning example: N = 3, U = 3, M = 1, t = 1,
// target 0.7, default link budget.
PlanQuery operating_point() {
    PlanQuery q;
    q.coop_order = 3;
    q.users = 3;
    q.threshold_t = 1.0;
    q.target_rcp = 0.7;
    q.budget.antennas_per_bs = 1;
    return q;
}

TrialConfig worst_point_trials(const PlanQuery& q, double spacing, long trials, std::uint64_t seed) {
    TrialConfig tc;
    tc.region = build_coop_region(q.coop_order, spacing);
    tc.user_positions.assign(static_cast<std::size_t>(q.users), worst_point(tc.region));
    tc.budget = q.budget;
    tc.trials = trials;
    tc.seed = seed;
    return tc;
}

Outcome criterion_1() {
    const auto start = Clock::now();
    const CliRun r = cli({"plan", "--set", "coop_order=3", "--set", "users=3", "--set", "antennas_per_bs=1", "--set",
                          "threshold_t=1", "--set", "target_rcp=0.7"});
    const double elapsed = seconds_since(start);
    const auto rows = csv_rows(r.out);
    if (r.code != 0 || rows.size() != 2) return {false, fmt("plan exited %d", r.code)};
    const double lambda = std::stod(rows[1][6]);
    const double spacing = std::stod(rows[1][5]);
    const bool ok = lambda >= 6.8e-6 && lambda <= 8.3e-6 && elapsed < 1.0;
    return {ok, fmt("lambda = %.4e BS/m^2 (D = %.2f m), need [6.8e-6, 8.3e-6]; runtime %.3f s (< 1 s)", lambda,
                    spacing, elapsed)};
}

Outcome criterion_2() {
    const auto start = Clock::now();
    const CliRun r = cli({"compare", "--set", "target_rcp=0.7", "--set", "antennas_per_bs=1", "--set", "users=1",
                          "--set", "threshold_t=1"});
    const double elapsed = seconds_since(start);
    const auto rows = csv_rows(r.out);
    if (r.code != 0 || rows.size() != 4) return {false, fmt("compare exited %d", r.code)};
    const double r2 = std::stod(rows[2][2]);
    const double r3 = std::stod(rows[3][2]);
    const bool ok = r2 >= 0.77 && r2 <= 0.87 && r3 >= 0.64 && r3 <= 0.74 && elapsed < 5.0;
    return {ok, fmt("N=2/N=1 = %.4f (need [0.77, 0.87]), N=3/N=1 = %.4f (need [0.64, 0.74]); runtime %.3f s (< 5 s)",
                    r2, r3, elapsed)};
}

Outcome criterion_3() {
    const auto start = Clock::now();
    const PlanQuery q = operating_point();
    const PlanResult plan = required_density(q);
    const TrialConfig tc = worst_point_trials(q, plan.spacing, 100'000, 3);
    const EmpiricalEstimate e = empirical_rcp(tc, q.users * q.threshold_t, RateKind::exact);
    const double elapsed = seconds_since(start);
    const bool ok = std::abs(e.mean - 0.75) <= 0.02 && elapsed < 120.0;
    return {ok, fmt("MC exact RCP = %.4f +/- %.4f (SE) at D = %.2f m, need 0.75 +/- 0.02; runtime %.1f s (< 120 s)",
                    e.mean, e.std_error, plan.spacing, elapsed)};
}

Outcome criterion_4() {
    const PlanQuery q = operating_point();
    const PlanResult plan = required_density(q);
    const TrialConfig tc = worst_point_trials(q, plan.spacing, 100'000, 4);
    const RateCampaign campaign = run_rate_campaign(tc);
    double worst_diff = 0.0;
    std::string per_t;
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        const double analytic = worst_user_rcp(t, tc.region, q.users, q.budget);
        const double empirical = estimate_rcp(campaign.samples, q.users * t, RateKind::hadamard).mean;
        worst_diff = std::max(worst_diff, std::abs(analytic - empirical));
        per_t += fmt(" t=%g: %.4f vs %.4f;", t, analytic, empirical);
    }
    const std::vector<double> d = distances_to_bss(tc.user_positions.front(), tc.region);
    const SnrDistribution fit = snr_lognormal_fit(d, q.budget);
    const std::vector<double> logs = sample_log_snr(d, q.budget, 100'000, 44);
    const double ks = ks_distance_normal(logs, fit.mu, fit.sigma);
    const bool ok = worst_diff < 0.03 && ks < 0.03;
    return {ok, fmt("max |analytic - empirical R''| = %.4f (< 0.03);%s KS = %.4f (< 0.03)", worst_diff,
                    per_t.c_str(), ks)};
}

Outcome criterion_5() {
    double worst = 0.0;
    double at_a = 0.0;
    double at_b = 0.0;
    for (double a : cli::kErgodicGridA) {
        for (double b : cli::kErgodicGridB) {
            const ProductSnrParams p{a, b};
            const double diff = std::abs(ergodic_sum_rate(p) - ergodic_sum_rate_quadrature(p));
            if (diff > worst) {
                worst = diff;
                at_a = a;
                at_b = b;
            }
        }
    }
    const double eps = cli::q_series_max_error();
    const bool ok = worst < 5e-3 && eps < 1e-2;
    return {ok, fmt("closed form vs quadrature max diff = %.3e b/s/Hz at (a=%g, b=%g) (< 5e-3); Q-series eps* = %.4e "
                    "(< 1e-2)",
                    worst, at_a, at_b, eps)};
}

Point2D random_point_in(const CoopRegion& region, RngStream& rng) {
    double x_lo = region.polygon.front().x, x_hi = x_lo;
    double y_lo = region.polygon.front().y, y_hi = y_lo;
    for (const Point2D& p : region.polygon) {
        x_lo = std::min(x_lo, p.x);
        x_hi = std::max(x_hi, p.x);
        y_lo = std::min(y_lo, p.y);
        y_hi = std::max(y_hi, p.y);
    }
    for (;;) {
        const Point2D p{x_lo + (x_hi - x_lo) * rng.uniform(), y_lo + (y_hi - y_lo) * rng.uniform()};
        if (region.contains(p)) return p;
    }
}

Outcome criterion_6() {
    constexpr double kSlack = 1e-8;
    constexpr long kTotal = 1'000'000;
    constexpr long kPositionSets = 20;
    struct Combo {
        int n, m, u;
    };
    std::vector<Combo> combos;
    for (int n = 1; n <= 3; ++n) {
        for (int m : {1, 2, 4}) {
            for (int u = 1; u <= n * m; ++u) combos.push_back({n, m, u});
        }
    }
    const long per_combo = (kTotal + static_cast<long>(combos.size()) - 1) / static_cast<long>(combos.size());
    const long per_set = (per_combo + kPositionSets - 1) / kPositionSets;

    long trials = 0;
    long redraws = 0;
    long v_lower_exact = 0;
    long v_lower_hadamard = 0;
    long v_wh = 0;
    long v_cov = 0;
    double max_wh = 0.0;
    double max_cov = 0.0;
    std::uint64_t stream = 0;
    for (std::size_t ci = 0; ci < combos.size(); ++ci) {
        const Combo& c = combos[ci];
        LinkBudget budget;
        budget.antennas_per_bs = c.m;
        const CoopRegion region = build_coop_region(c.n, 390.0);
        for (long set = 0; set < kPositionSets; ++set) {
            RngStream pos_rng(606, (ci << 32) | static_cast<std::uint64_t>(set));
            std::vector<Point2D> users;
            for (int k = 0; k < c.u; ++k) users.push_back(random_point_in(region, pos_rng));
            for (long t = 0; t < per_set; ++t) {
                RngStream rng(6, stream++);
                ChannelMatrix h = sample_channel(region, users, budget, rng);
                CMatrix w;
                for (;;) {
                    try {
                        w = zf_filter(h);
                        break;
                    } catch (const SingularChannel&) {
                        ++redraws;
                        h = sample_channel(region, users, budget, rng);
                    }
                }
                ++trials;
                const RateSample s = rate_sample(h, budget);
                if (s.r_lower > s.r_exact + kSlack) ++v_lower_exact;
                if (s.r_lower > s.r_hadamard + kSlack) ++v_lower_hadamard;

                const CMatrix wh = w * h.entries;
                const double wh_err = max_abs(wh - CMatrix::identity(wh.rows()));
                max_wh = std::max(max_wh, wh_err);
                if (!(wh_err <= kSlack)) ++v_wh;

                // sigma^2 cancels; compare W W^H with (H^H H)^-1 relative to its scale.
                const oracle::EigenC he = oracle::to_eigen(h.entries);
                const oracle::EigenC gram_inv = oracle::gram_inverse_qr(he);
                const oracle::EigenC wwh = oracle::to_eigen(w * adjoint(w));
                const double scale = gram_inv.cwiseAbs().maxCoeff();
                const double cov_err = (wwh - gram_inv).cwiseAbs().maxCoeff() / scale;
                max_cov = std::max(max_cov, cov_err);
                if (!(cov_err <= kSlack)) ++v_cov;
            }
        }
    }
    const long violations = v_lower_exact + v_lower_hadamard + v_wh + v_cov;
    const bool ok = violations == 0 && trials >= kTotal;
    return {ok, fmt("%ld trials over %zu (N,M,U) combos: R'<=R violations %ld, R'<=R'' %ld, WH=I %ld (max %.2e), "
                    "cov %ld (max rel %.2e); %ld redraws",
                    trials, combos.size(), v_lower_exact, v_lower_hadamard, v_wh, max_wh, v_cov, max_cov, redraws)};
}

Outcome criterion_7() {
    const LinkBudget base;
    int failures = 0;
    std::string notes;
    auto record = [&](bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            notes += " " + what + ";";
        }
    };

    // Scale law on every region's worst point and one off-centre point.
    for (int n = 1; n <= 3; ++n) {
        const CoopRegion region = build_coop_region(n, 390.0);
        for (Point2D p : {worst_point(region), Point2D{region.spacing * 0.3, 15.0}}) {
            const std::vector<double> d = distances_to_bss(p, region);
            for (int m : {1, 2, 4}) {
                LinkBudget b = base;
                b.antennas_per_bs = m;
                const SnrDistribution ref = snr_lognormal_fit(d, b);
                for (double s : {0.5, 2.0, 3.7}) {
                    std::vector<double> ds = d;
                    for (double& v : ds) v *= s;
                    const SnrDistribution sc = snr_lognormal_fit(ds, b);
                    record(std::abs(sc.sigma - ref.sigma) <= 1e-9, fmt("sigma scale N=%d M=%d s=%g", n, m, s));
                    record(std::abs((sc.mu - ref.mu) - (-b.alpha() * std::log(s))) <= 1e-9,
                           fmt("mu shift N=%d M=%d s=%g", n, m, s));
                }
                const SnrMoments mom = snr_moments(d, b);
                const double m1 = std::exp(ref.mu + 0.5 * ref.sigma * ref.sigma);
                const double m2 = std::exp(2.0 * ref.mu + 2.0 * ref.sigma * ref.sigma);
                record(std::abs(m1 / mom.beta1 - 1.0) <= 1e-10, fmt("beta1 match N=%d M=%d", n, m));
                record(std::abs(m2 / mom.beta2 - 1.0) <= 1e-10, fmt("beta2 match N=%d M=%d", n, m));
            }
        }
    }

    // N = 1 closed form.
    const CoopRegion cell = build_coop_region(1, 390.0);
    const std::vector<double> d1 = distances_to_bss(worst_point(cell), cell);
    for (int m : {1, 2, 4, 8}) {
        LinkBudget b = base;
        b.antennas_per_bs = m;
        const SnrDistribution s = snr_lognormal_fit(d1, b);
        const double expected = b.sigma_z() * b.sigma_z() + std::log((m + 1.0) / m);
        record(std::abs(s.sigma * s.sigma - expected) <= 1e-10, fmt("N=1 sigma^2 M=%d", m));
    }

    // Monotonicity of the worst-point RCP in density, M and N.
    std::vector<double> grid;
    for (int i = 0; i <= 18; ++i) grid.push_back(2e-6 + 1e-6 * i);
    for (int u : {1, 2, 3}) {
        for (double t : {0.5, 1.0, 2.0}) {
            for (int n = 1; n <= 3; ++n) {
                for (int m : {1, 2, 4}) {
                    if (u > n * m) continue;
                    PlanQuery q;
                    q.coop_order = n;
                    q.users = u;
                    q.threshold_t = t;
                    q.budget.antennas_per_bs = m;
                    const std::vector<CurvePoint> curve = rcp_density_curve(q, grid);
                    for (std::size_t i = 1; i < curve.size(); ++i) {
                        record(curve[i].worst_rcp >= curve[i - 1].worst_rcp,
                               fmt("lambda monotone N=%d M=%d U=%d t=%g", n, m, u, t));
                    }
                    for (double lam : grid) {
                        const CoopRegion r = build_coop_region(n, spacing_from_density(lam));
                        const double here = worst_user_rcp(t, r, u, q.budget);
                        if (m < 4) {
                            LinkBudget more = q.budget;
                            more.antennas_per_bs = m * 2;
                            record(worst_user_rcp(t, r, u, more) >= here, fmt("M monotone N=%d M=%d", n, m));
                        }
                        if (n < 3) {
                            const CoopRegion bigger = build_coop_region(n + 1, spacing_from_density(lam));
                            record(worst_user_rcp(t, bigger, u, q.budget) >= here, fmt("N monotone N=%d M=%d", n, m));
                        }
                    }
                }
            }
        }
    }
    if (notes.size() > 300) notes = notes.substr(0, 300) + " ...";
    return {failures == 0, fmt("%d property failures (scale 1e-9, moments 1e-10, N=1 form 1e-10, monotonicity)%s",
                               failures, notes.c_str())};
}

Outcome criterion_8() {
    const char* env = std::getenv("COMPPLAN_TEST_TMP");
    const std::filesystem::path dir = std::filesystem::path(env ? env : "/tmp") / "acceptance_tmp";
    std::filesystem::create_directories(dir);
    const std::string p1 = (dir / "validate_t1.csv").string();
    const std::string p8 = (dir / "validate_t8.csv").string();
    const CliRun a = cli({"validate", "--seed", "42", "--threads", "1", "--out", p1});
    const CliRun b = cli({"validate", "--seed", "42", "--threads", "8", "--out", p8});
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string ca = slurp(p1);
    const std::string cb = slurp(p8);
    const bool ok = a.code == 0 && b.code == 0 && !ca.empty() && ca == cb;
    return {ok, fmt("validate --seed 42: threads 1 vs 8 exit %d/%d, %zu vs %zu bytes, %s", a.code, b.code, ca.size(),
                    cb.size(), ca == cb ? "identical" : "different")};
}

const std::vector<std::function<Outcome()>> kCriteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                      criterion_5, criterion_6, criterion_7, criterion_8};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            which.push_back(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion K]\n");
            return 2;
        }
    }
    if (which.empty()) {
        for (int k = 1; k <= static_cast<int>(kCriteria.size()); ++k) which.push_back(k);
    }
    int failed = 0;
    for (int k : which) {
        if (k < 1 || k > static_cast<int>(kCriteria.size())) {
            std::fprintf(stderr, "unknown criterion %d\n", k);
            return 2;
        }
        Outcome o;
        try {
            o = kCriteria[static_cast<std::size_t>(k - 1)]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %d: %s\n", o.pass ? "PASS" : "FAIL", k, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
