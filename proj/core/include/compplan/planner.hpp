#pragma once

// Inverts the worst-point user RCP to the least BS density that guarantees
// the target coverage everywhere in the cooperation region.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "compplan/channel.hpp"
#include "compplan/geometry.hpp"

namespace compplan {

struct PlannerOptions {
    double rcp_tol = 1e-4;
    double spacing_lo_m = 10.0;
    double spacing_hi_m = 10'000.0;
    double spacing_tol_m = 1e-3;
    int max_iterations = 60;
};

struct PlanQuery {
    int coop_order = 3;
    int users = 3;
    double threshold_t = 1.0;  // b/s/Hz per user
    double target_rcp = 0.7;
    LinkBudget budget;
    PlannerOptions options;

    void validate() const;
};

struct PlanResult {
    double spacing = 0.0;  // D, m
    double density = 0.0;  // BS / m^2
    double achieved_rcp = 0.0;
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    // The target already holds at the widest spacing searched; the reported
    // spacing is the bracket's upper end, not a root.
    bool slack = false;
};

// The target cannot be met even at the densest spacing searched.
class InfeasibleTarget : public std::runtime_error {
public:
    InfeasibleTarget(double rcp_at_min_spacing, double min_spacing);
    double rcp_at_min_spacing() const noexcept { return rcp_; }
    double min_spacing() const noexcept { return spacing_; }

private:
    double rcp_;
    double spacing_;
};

// Bisection over D on f(D) = worst_user_rcp(t, region(N, D), U), which is
// strictly decreasing in D. Throws InfeasibleTarget when f(D_lo) < target.
PlanResult required_density(const PlanQuery& q);

// required_density(N_a) / required_density(N_b), all other fields from `common`.
double cooperation_gain(int order_a, int order_b, const PlanQuery& common);

struct CurvePoint {
    double density;
    double spacing;
    double worst_rcp;
};

// Worst-point user RCP along an ascending density grid (target_rcp unused).
std::vector<CurvePoint> rcp_density_curve(const PlanQuery& q, std::span<const double> density_grid);

enum class ContourEngine { analytic, mc_exact };

struct ContourOptions {
    ContourEngine engine = ContourEngine::analytic;
    long trials = 10'000;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct ContourPoint {
    double x;
    double y;
    double rcp;
    double ci_lo;  // equal to rcp for the analytic engine
    double ci_hi;
};

// Sum RCP at threshold U t with users 2..U pinned at worst_point(region) and
// user 1 swept over the region grid.
std::vector<ContourPoint> rcp_contour(const CoopRegion& region, int users, const LinkBudget& budget,
                                      double threshold_t, double grid_pitch_m, const ContourOptions& opts = {});

}  // namespace compplan
