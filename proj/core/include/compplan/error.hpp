#pragma once

#include <stdexcept>
#include <string>

namespace compplan {

// Argument outside the mathematical domain of an operation (non-positive
// spacing, empty distance list, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Cooperation order outside {1, 2, 3}.
class UnsupportedOrder : public std::invalid_argument {
public:
    explicit UnsupportedOrder(int order)
        : std::invalid_argument("unsupported cooperation order " + std::to_string(order) +
                                " (expected 1, 2 or 3)"),
          order_(order) {}
    int order() const noexcept { return order_; }

private:
    int order_;
};

// More users than receive dimensions: zero forcing needs U <= N*M.
class InfeasibleUsers : public std::invalid_argument {
public:
    InfeasibleUsers(int users, int dims)
        : std::invalid_argument("infeasible user count " + std::to_string(users) +
                                " for " + std::to_string(dims) + " receive antennas (need U <= N*M)"),
          users_(users), dims_(dims) {}
    int users() const noexcept { return users_; }
    int dims() const noexcept { return dims_; }

private:
    int users_;
    int dims_;
};

// Gram matrix H^H H is numerically singular.
class SingularChannel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace compplan
