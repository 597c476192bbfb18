#include "compplan/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "compplan/error.hpp"
#include "compplan/special.hpp"

namespace compplan {

namespace {

constexpr double kLn2 = std::numbers::ln2;

struct ScaledSums {
    double log_scale;  // ln of the largest d^(-alpha)
    double s1;         // sum of d^(-alpha) / scale
    double s2;         // sum of d^(-2 alpha) / scale^2
    double cross;      // sum_{i != j} d_i^(-alpha) d_j^(-alpha) / scale^2
};

ScaledSums scaled_sums(std::span<const double> distances, double alpha) {
    if (distances.empty()) throw DomainError("SNR fit needs at least one BS distance");
    for (double d : distances) {
        if (!(d >= kMinDistanceM) || !std::isfinite(d)) {
            throw DomainError("BS distance below the 1 m clamp or non-finite");
        }
    }
    const double d_min = *std::min_element(distances.begin(), distances.end());
    ScaledSums out{-alpha * std::log(d_min), 0.0, 0.0, 0.0};
    std::vector<double> s(distances.size());
    for (std::size_t i = 0; i < distances.size(); ++i) s[i] = std::pow(d_min / distances[i], alpha);
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.s1 += s[i];
        out.s2 += s[i] * s[i];
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j != i) out.cross += s[i] * s[j];
        }
    }
    return out;
}

}  // namespace

QSeriesCoeffs QSeriesCoeffs::make(double a_const, double b_const, int terms) {
    QSeriesCoeffs c;
    c.a_bar_const = a_const;
    c.b_bar_const = b_const;
    c.a.resize(static_cast<std::size_t>(terms));
    double power = 1.0;      // A^j
    double factorial = 1.0;  // j!
    for (int j = 1; j <= terms; ++j) {
        power *= a_const;
        factorial *= j;
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        c.a[static_cast<std::size_t>(j - 1)] =
            sign * power / (b_const * std::sqrt(std::numbers::pi) * std::pow(std::numbers::sqrt2, j + 1) * factorial);
    }
    return c;
}

const QSeriesCoeffs& default_q_series() {
    static const QSeriesCoeffs coeffs = QSeriesCoeffs::make();
    return coeffs;
}

SnrMoments snr_moments(std::span<const double> distances, const LinkBudget& budget) {
    const ScaledSums s = scaled_sums(distances, budget.alpha());
    const double m = budget.antennas_per_bs;
    const double theta = budget.snr_scale();
    const double var_z = budget.sigma_z() * budget.sigma_z();
    const double scale = std::exp(s.log_scale);
    const double beta1 = m * theta * std::exp(var_z / 2.0) * s.s1 * scale;
    const double beta2 = m * theta * theta * std::exp(var_z) *
                         ((m + 1.0) * std::exp(var_z) * s.s2 + m * s.cross) * scale * scale;
    return {beta1, beta2};
}

SnrDistribution snr_lognormal_fit(std::span<const double> distances, const LinkBudget& budget) {
    const ScaledSums s = scaled_sums(distances, budget.alpha());
    const double m = budget.antennas_per_bs;
    const double var_z = budget.sigma_z() * budget.sigma_z();

    // ln(beta2 / beta1^2), formed before taking logs so the large common
    // factors cancel exactly.
    const double log_ratio = std::log(((m + 1.0) * std::exp(var_z) * s.s2 + m * s.cross) / (m * s.s1 * s.s1));
    const double log_beta1 = std::log(m * budget.snr_scale()) + var_z / 2.0 + s.log_scale + std::log(s.s1);

    const double var = std::max(log_ratio, 0.0);
    return {log_beta1 - var / 2.0, std::sqrt(var)};
}

ProductSnrParams product_snr(std::span<const SnrDistribution> users) {
    if (users.empty()) throw DomainError("product SNR needs at least one user");
    ProductSnrParams p;
    double var = 0.0;
    for (const SnrDistribution& u : users) {
        p.a_bar += u.mu;
        var += u.sigma * u.sigma;
    }
    p.b_bar = std::sqrt(var);
    return p;
}

double q_exact(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_series(double x, const QSeriesCoeffs& coeffs) {
    if (x < 0.0) return 1.0 - q_series(-x, coeffs);
    double poly = 0.0;
    for (std::size_t j = coeffs.a.size(); j-- > 0;) poly = poly * x + coeffs.a[j];
    return std::clamp(std::exp(-0.5 * x * x) * poly, 0.0, 1.0);
}

double rcp(double threshold_T, const ProductSnrParams& p) {
    const double margin = threshold_T * kLn2 - p.a_bar;
    if (p.b_bar == 0.0) return margin < 0.0 ? 1.0 : 0.0;
    return q_exact(margin / p.b_bar);
}

double ergodic_sum_rate_quadrature(const ProductSnrParams& p) {
    if (p.b_bar == 0.0) return std::max(p.a_bar, 0.0) / kLn2;
    auto ccdf = [&](double t) { return q_exact((t * kLn2 - p.a_bar) / p.b_bar); };
    const double split = std::max(p.a_bar / kLn2, 0.0);
    const double head = integrate(ccdf, 0.0, split, 1e-13, 1e-13).value;
    const double tail = integrate_to_infinity(ccdf, split, 1e-13, 1e-13).value;
    return head + tail;
}

double ergodic_sum_rate(const ProductSnrParams& p, const QSeriesCoeffs& coeffs) {
    if (p.b_bar < 0.0) throw DomainError("b_bar must be non-negative");
    if (p.b_bar == 0.0) return std::max(p.a_bar, 0.0) / kLn2;
    if (p.a_bar < 0.0) return ergodic_sum_rate_quadrature(p);

    // Splitting the integral at T = a_bar / ln 2 and substituting
    // y = ((T ln 2 - a_bar) / b_bar)^2 / 2 on both halves leaves
    //   a_bar/ln2 - (b/ln2) sum_j c_j gamma(j/2, Y) + (b/ln2) sum_j c_j Gamma(j/2)
    // with c_j = 2^(j/2 - 1) a_j and Y = (a_bar / b_bar)^2 / 2; the two gamma
    // sums combine into the upper incomplete gamma.
    const double y = 0.5 * (p.a_bar / p.b_bar) * (p.a_bar / p.b_bar);
    double tail = 0.0;
    for (int j = 1; j <= coeffs.terms(); ++j) {
        const double half_j = 0.5 * j;
        tail += std::pow(2.0, half_j - 1.0) * coeffs.a[static_cast<std::size_t>(j - 1)] *
                upper_incomplete_gamma(half_j, y);
    }
    return p.a_bar / kLn2 + (p.b_bar / kLn2) * tail;
}

double sum_rcp(double threshold_T, const CoopRegion& region, std::span<const Point2D> users,
               const LinkBudget& budget) {
    require_zf_feasible(static_cast<int>(users.size()), region.order, budget.antennas_per_bs);
    std::vector<SnrDistribution> fits;
    fits.reserve(users.size());
    for (const Point2D& u : users) {
        const std::vector<double> d = distances_to_bss(u, region);
        fits.push_back(snr_lognormal_fit(d, budget));
    }
    return rcp(threshold_T, product_snr(fits));
}

namespace {

ProductSnrParams worst_point_product(const CoopRegion& region, int users, const LinkBudget& budget) {
    require_zf_feasible(users, region.order, budget.antennas_per_bs);
    const std::vector<double> d = distances_to_bss(worst_point(region), region);
    const SnrDistribution one = snr_lognormal_fit(d, budget);
    return {users * one.mu, std::sqrt(static_cast<double>(users)) * one.sigma};
}

}  // namespace

double worst_user_rcp(double per_user_threshold_t, const CoopRegion& region, int users, const LinkBudget& budget) {
    return rcp(users * per_user_threshold_t, worst_point_product(region, users, budget));
}

double worst_user_ergodic(const CoopRegion& region, int users, const LinkBudget& budget,
                          const QSeriesCoeffs& coeffs) {
    return ergodic_sum_rate(worst_point_product(region, users, budget), coeffs) / users;
}

}  // namespace compplan
