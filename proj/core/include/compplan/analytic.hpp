#pragma once

// Closed-form rate coverage and ergodic rate for uplink joint reception.
//
// The per-user SNR under the Hadamard (column-energy) surrogate is
//   SNR(u) = sum_n xi_n z_n,  xi_n ~ Gamma(M, theta'),  z_n ~ LN(-alpha ln d_n, sigma_z)
// and is approximated by a single log-normal matching its first two moments.
// Users are independent, so the sum-rate surrogate log2 prod_u SNR(u) is
// normal in natural-log units with mean a_bar and std b_bar.

#include <array>
#include <span>
#include <vector>

#include "compplan/channel.hpp"
#include "compplan/geometry.hpp"

namespace compplan {

struct SnrMoments {
    double beta1;  // E[SNR]
    double beta2;  // E[SNR^2]
};

struct SnrDistribution {
    double mu = 0.0;     // mean of ln SNR
    double sigma = 0.0;  // std of ln SNR
};

struct ProductSnrParams {
    double a_bar = 0.0;  // sum_u mu_u
    double b_bar = 0.0;  // sqrt(sum_u sigma_u^2)
};

// Coefficients of Q(x) ~ exp(-x^2/2) sum_j a_j x^(j-1), x >= 0, with
// a_j = (-1)^(j+1) A^j / (B sqrt(pi) sqrt(2)^(j+1) j!).
struct QSeriesCoeffs {
    double a_bar_const = 1.98;
    double b_bar_const = 1.135;
    std::vector<double> a;

    static QSeriesCoeffs make(double a_const = 1.98, double b_const = 1.135, int terms = 10);
    int terms() const { return static_cast<int>(a.size()); }
};

const QSeriesCoeffs& default_q_series();

SnrMoments snr_moments(std::span<const double> distances, const LinkBudget& budget);
SnrDistribution snr_lognormal_fit(std::span<const double> distances, const LinkBudget& budget);

ProductSnrParams product_snr(std::span<const SnrDistribution> users);

// Gaussian tail Q(x) = erfc(x / sqrt 2) / 2.
double q_exact(double x);
// Series approximation for x >= 0, clamped to [0, 1]. Negative x is reflected.
double q_series(double x, const QSeriesCoeffs& coeffs = default_q_series());

// P(R'' > T) ~ Q((T ln 2 - a_bar) / b_bar). With b_bar = 0 the product SNR is
// deterministic and the result is a step.
double rcp(double threshold_T, const ProductSnrParams& p);

// Integral of the RCP over T >= 0, in closed form through the Q series and
// upper incomplete gamma functions. a_bar < 0 falls back to quadrature.
double ergodic_sum_rate(const ProductSnrParams& p, const QSeriesCoeffs& coeffs = default_q_series());

// Integral_0^inf rcp(T) dT by adaptive quadrature with q_exact.
double ergodic_sum_rate_quadrature(const ProductSnrParams& p);

// Sum RCP with users at arbitrary positions.
double sum_rcp(double threshold_T, const CoopRegion& region, std::span<const Point2D> users,
               const LinkBudget& budget);

// Per-user RCP with all U users at worst_point(region): P(R > U t).
double worst_user_rcp(double per_user_threshold_t, const CoopRegion& region, int users, const LinkBudget& budget);

// Worst-point ergodic sum-rate divided by U.
double worst_user_ergodic(const CoopRegion& region, int users, const LinkBudget& budget,
                          const QSeriesCoeffs& coeffs = default_q_series());

}  // namespace compplan
