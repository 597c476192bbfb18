#include "compplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "compplan/analytic.hpp"
#include "compplan/error.hpp"
#include "compplan/montecarlo.hpp"
#include "compplan/parallel.hpp"

namespace compplan {

InfeasibleTarget::InfeasibleTarget(double rcp_at_min_spacing, double min_spacing)
    : std::runtime_error("target RCP unreachable: worst-point RCP is " + std::to_string(rcp_at_min_spacing) +
                         " at the minimum spacing " + std::to_string(min_spacing) + " m"),
      rcp_(rcp_at_min_spacing),
      spacing_(min_spacing) {}

void PlanQuery::validate() const {
    budget.validate();
    if (coop_order < 1 || coop_order > 3) throw UnsupportedOrder(coop_order);
    require_zf_feasible(users, coop_order, budget.antennas_per_bs);
    if (!(target_rcp > 0.0 && target_rcp < 1.0)) throw DomainError("target RCP must lie in (0, 1)");
    if (!(threshold_t > 0.0) || !std::isfinite(threshold_t)) throw DomainError("rate threshold must be positive");
    const PlannerOptions& o = options;
    if (!(o.spacing_lo_m > 0.0 && o.spacing_hi_m > o.spacing_lo_m)) {
        throw DomainError("planner spacing bracket must satisfy 0 < lo < hi");
    }
    if (!(o.rcp_tol > 0.0) || !(o.spacing_tol_m > 0.0) || o.max_iterations < 1) {
        throw DomainError("planner tolerances must be positive");
    }
}

PlanResult required_density(const PlanQuery& q) {
    q.validate();
    auto f = [&](double spacing) {
        return worst_user_rcp(q.threshold_t, build_coop_region(q.coop_order, spacing), q.users, q.budget);
    };

    double lo = q.options.spacing_lo_m;
    double hi = q.options.spacing_hi_m;
    const double f_lo = f(lo);
    if (f_lo < q.target_rcp) throw InfeasibleTarget(f_lo, lo);

    PlanResult r;
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    const double f_hi = f(hi);
    if (f_hi >= q.target_rcp) {
        r.spacing = hi;
        r.density = density_from_spacing(hi);
        r.achieved_rcp = f_hi;
        r.slack = true;
        return r;
    }

    // Invariant: f(lo) >= target > f(hi).
    double mid = 0.5 * (lo + hi);
    double f_mid = f(mid);
    int it = 1;
    while (std::abs(f_mid - q.target_rcp) > q.options.rcp_tol && hi - lo >= q.options.spacing_tol_m &&
           it < q.options.max_iterations) {
        if (f_mid >= q.target_rcp) {
            lo = mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
        f_mid = f(mid);
        ++it;
    }

    r.spacing = mid;
    r.density = density_from_spacing(mid);
    r.achieved_rcp = f_mid;
    r.iterations = it;
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    return r;
}

double cooperation_gain(int order_a, int order_b, const PlanQuery& common) {
    PlanQuery qa = common;
    qa.coop_order = order_a;
    PlanQuery qb = common;
    qb.coop_order = order_b;
    if (order_a == order_b) {
        qa.validate();
        return 1.0;
    }
    return required_density(qa).density / required_density(qb).density;
}

std::vector<CurvePoint> rcp_density_curve(const PlanQuery& q, std::span<const double> density_grid) {
    q.budget.validate();
    if (q.coop_order < 1 || q.coop_order > 3) throw UnsupportedOrder(q.coop_order);
    require_zf_feasible(q.users, q.coop_order, q.budget.antennas_per_bs);
    if (density_grid.empty()) throw DomainError("density grid is empty");
    if (!std::is_sorted(density_grid.begin(), density_grid.end())) {
        throw DomainError("density grid must be ascending");
    }

    std::vector<CurvePoint> out;
    out.reserve(density_grid.size());
    for (double lambda : density_grid) {
        const double d = spacing_from_density(lambda);
        const double v = worst_user_rcp(q.threshold_t, build_coop_region(q.coop_order, d), q.users, q.budget);
        out.push_back({lambda, d, v});
    }
    return out;
}

std::vector<ContourPoint> rcp_contour(const CoopRegion& region, int users, const LinkBudget& budget,
                                      double threshold_t, double grid_pitch_m, const ContourOptions& opts) {
    budget.validate();
    require_zf_feasible(users, region.order, budget.antennas_per_bs);
    const std::vector<Point2D> grid = region_grid(region, grid_pitch_m);
    const Point2D pinned = worst_point(region);
    const double threshold = users * threshold_t;

    std::vector<ContourPoint> out(grid.size());
    auto positions_for = [&](Point2D p) {
        std::vector<Point2D> pos(static_cast<std::size_t>(users), pinned);
        pos[0] = p;
        return pos;
    };

    if (opts.engine == ContourEngine::analytic) {
        parallel_for(grid.size(), opts.threads, [&](std::size_t i) {
            const std::vector<Point2D> pos = positions_for(grid[i]);
            const double v = sum_rcp(threshold, region, pos, budget);
            out[i] = {grid[i].x, grid[i].y, v, v, v};
        });
        return out;
    }

    // Each grid point runs its own campaign on the shared seed (common random
    // numbers across points); trials within a campaign are parallel.
    for (std::size_t i = 0; i < grid.size(); ++i) {
        TrialConfig cfg{region, positions_for(grid[i]), budget, opts.trials, opts.seed};
        const EmpiricalEstimate e = empirical_rcp(cfg, threshold, RateKind::exact, opts.threads);
        out[i] = {grid[i].x, grid[i].y, e.mean, e.ci_lo, e.ci_hi};
    }
    return out;
}

}  // namespace compplan
