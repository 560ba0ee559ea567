#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace plasso {

enum class Family { gaussian, binomial, poisson };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

/// Exponential-family definition with canonical link, so theta(eta) = eta.
///
/// b(theta) is theta^2/2 (Gaussian), log(1 + e^theta) (Binomial) or
/// e^theta (Poisson). a_phi is the dispersion a(phi): sigma^2 for the
/// Gaussian family, fixed at 1 otherwise.
struct FamilySpec {
    Family kind = Family::gaussian;
    bool dispersion_known = false;
    double a_phi = 1.0;

    static FamilySpec gaussian(double sigma2 = 1.0, bool known = false);
    static FamilySpec binomial();
    static FamilySpec poisson();

    bool operator==(const FamilySpec&) const = default;
};

/// Cumulant function b(theta).
double family_b(const FamilySpec& family, double theta);

/// Mean function b'(theta).
double family_mean(const FamilySpec& family, double theta);

/// Variance function b''(theta).
double family_variance(const FamilySpec& family, double theta);

/// Canonical link: the inverse of family_mean. Binomial means are clamped
/// into (1e-10, 1 - 1e-10) and Poisson means below at 1e-10.
double family_link(const FamilySpec& family, double mu);

/// (1/n) sum_i w_i [b(x_i'beta) - t_i x_i'beta]. Convex in beta.
double glm_objective(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                     const Eigen::VectorXd& targets, const Eigen::VectorXd& obs_weights,
                     const FamilySpec& family);

/// Exact log density of y given linear predictor eta, all constants
/// included. sigma2 is ignored for Binomial and Poisson.
double log_density(const FamilySpec& family, double y, double eta, double sigma2);

/// A design matrix whose first column is the intercept, a response vector
/// and the family the response is modelled with.
struct Dataset {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    FamilySpec family;
    std::vector<std::string> covariate_names;  // optional, p entries when set

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index p() const { return X.cols() - 1; }

    /// Throws DataError / DimensionError when an invariant is broken.
    void validate() const;

    /// Rows selected by index, in the given order.
    Dataset rows(std::span<const int> index) const;
};

/// Builds a Dataset from raw covariates by prepending the intercept column.
Dataset make_dataset(const Eigen::MatrixXd& covariates, const Eigen::VectorXd& y,
                     const FamilySpec& family, std::vector<std::string> names = {});

}  // namespace plasso
