#include "compplan/linalg.hpp"

#include <cassert>
#include <algorithm>
#include <cmath>

namespace compplan {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix adjoint(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
    }
    return out;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    assert(a.cols() == b.rows());
    CMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cdouble v = a(r, k);
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += v * b(k, c);
        }
    }
    return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    CMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
    }
    return out;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    CMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
    }
    return out;
}

CMatrix scaled(const CMatrix& a, double s) {
    CMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) * s;
    }
    return out;
}

CMatrix gram(const CMatrix& h) {
    const std::size_t n = h.cols();
    CMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            cdouble acc = 0.0;
            for (std::size_t r = 0; r < h.rows(); ++r) acc += std::conj(h(r, i)) * h(r, j);
            g(i, j) = acc;
            g(j, i) = std::conj(acc);
        }
        g(i, i) = g(i, i).real();
    }
    return g;
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const cdouble& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

std::optional<CMatrix> cholesky(const CMatrix& a, double rel_pivot_tol) {
    assert(a.rows() == a.cols());
    const std::size_t n = a.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i).real());
    const double floor = rel_pivot_tol * max_diag;

    CMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
        if (!(pivot > floor) || !std::isfinite(pivot)) return std::nullopt;
        const double ljj = std::sqrt(pivot);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cdouble acc = a(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k));
            l(i, j) = acc / ljj;
        }
    }
    return l;
}

double log_det_from_cholesky(const CMatrix& l) {
    double acc = 0.0;
    for (std::size_t i = 0; i < l.rows(); ++i) acc += std::log(l(i, i).real());
    return 2.0 * acc;
}

CMatrix cholesky_solve(const CMatrix& l, const CMatrix& b) {
    const std::size_t n = l.rows();
    assert(b.rows() == n);
    CMatrix x = b;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        // Forward: L y = b.
        for (std::size_t i = 0; i < n; ++i) {
            cdouble acc = x(i, c);
            for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * x(k, c);
            x(i, c) = acc / l(i, i).real();
        }
        // Backward: L^H x = y.
        for (std::size_t ii = n; ii-- > 0;) {
            cdouble acc = x(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) acc -= std::conj(l(k, ii)) * x(k, c);
            x(ii, c) = acc / l(ii, ii).real();
        }
    }
    return x;
}

}  // namespace compplan
