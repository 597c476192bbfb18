#include "compplan/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "compplan/error.hpp"

namespace compplan {

namespace {

constexpr int kMaxIter = 1000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Lower regularized P(s, x) by its power series; converges fast for x < s + 1.
double gamma_p_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Upper regularized Q(s, x) by the Legendre continued fraction, modified Lentz.
double gamma_q_fraction(double s, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

// 15-point Kronrod nodes on [-1, 1] (non-negative half) with the embedded
// 7-point Gauss weights.
constexpr std::array<double, 8> kXgk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                     0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                     0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                     0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                     0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                     0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                     0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double kronrod;
    double gauss;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    return {kronrod * half, gauss * half};
}

void adapt(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol, int depth,
           QuadratureResult& acc) {
    const Panel p = gk15(f, a, b);
    acc.evaluations += 15;
    const double err = std::abs(p.kronrod - p.gauss);
    if (depth <= 0 || err <= std::max(abs_tol, rel_tol * std::abs(p.kronrod))) {
        acc.value += p.kronrod;
        acc.error_estimate += err;
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * abs_tol, rel_tol, depth - 1, acc);
    adapt(f, mid, b, 0.5 * abs_tol, rel_tol, depth - 1, acc);
}

}  // namespace

double gamma_q(double s, double x) {
    if (!(s > 0.0) || !(x >= 0.0)) {
        throw DomainError("incomplete gamma needs s > 0 and x >= 0 (s=" + std::to_string(s) +
                          ", x=" + std::to_string(x) + ")");
    }
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < s + 1.0) return 1.0 - gamma_p_series(s, x);
    return gamma_q_fraction(s, x);
}

double upper_incomplete_gamma(double s, double x) { return std::tgamma(s) * gamma_q(s, x); }

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           double rel_tol, int max_depth) {
    QuadratureResult acc;
    if (a == b) return acc;
    adapt(f, a, b, abs_tol, rel_tol, max_depth, acc);
    return acc;
}

QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a, double abs_tol,
                                       double rel_tol) {
    auto mapped = [&](double u) {
        if (u >= 1.0) return 0.0;
        const double one_minus = 1.0 - u;
        return f(a + u / one_minus) / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, abs_tol, rel_tol);
}

}  // namespace compplan
