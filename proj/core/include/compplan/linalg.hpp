#pragma once

// Dense complex matrices at the scale of one cooperation region (at most a
// few tens of rows). Row-major storage.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace compplan {

using cdouble = std::complex<double>;

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    cdouble& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<cdouble>& data() const noexcept { return data_; }

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

CMatrix adjoint(const CMatrix& a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix scaled(const CMatrix& a, double s);

// H^H H.
CMatrix gram(const CMatrix& h);

double max_abs(const CMatrix& a);

// Lower factor L with A = L L^H for Hermitian positive-definite A, or nullopt
// when a pivot is not safely positive. A pivot counts as unsafe when it falls
// below rel_pivot_tol times the largest diagonal entry of A.
std::optional<CMatrix> cholesky(const CMatrix& a, double rel_pivot_tol = 0.0);

// ln det(A) from a Cholesky factor.
double log_det_from_cholesky(const CMatrix& l);

// Solves A X = B given the Cholesky factor of A.
CMatrix cholesky_solve(const CMatrix& l, const CMatrix& b);

}  // namespace compplan
