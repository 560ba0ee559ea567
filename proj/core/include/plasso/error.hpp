#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace plasso {

/// Argument outside the mathematical domain of an operation (non-finite
/// natural parameter, non-positive variance, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inconsistent vector/matrix shapes.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid data: non-finite entries, responses outside the family support,
/// malformed input files.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Singular or indefinite matrix where a factorization was required.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative procedure did not reach its tolerance. Carries the last iterate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, Eigen::VectorXd last_iterate, int iterations)
        : std::runtime_error(what), last_iterate_(std::move(last_iterate)), iterations_(iterations) {}

    const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }
    int iterations() const noexcept { return iterations_; }

private:
    Eigen::VectorXd last_iterate_;
    int iterations_;
};

}  // namespace plasso
