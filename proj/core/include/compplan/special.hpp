#pragma once

#include <functional>

namespace compplan {

// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s), for
// s > 0, x >= 0.
double gamma_q(double s, double x);

// Gamma(s, x) = integral_x^inf t^(s-1) e^(-t) dt.
double upper_incomplete_gamma(double s, double x);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-10,
                           double rel_tol = 1e-10, int max_depth = 40);

// Integral over [a, inf) via t = a + u / (1 - u).
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a, double abs_tol = 1e-10,
                                       double rel_tol = 1e-10);

}  // namespace compplan
