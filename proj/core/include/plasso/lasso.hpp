#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "plasso/glm.hpp"

namespace plasso {

enum class Method { alasso, plasso, wplasso };

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);

/// Weighted l1 penalty lambda * sum_j weights_j |beta_j| over the p slopes.
/// The intercept is never penalized. exclude_j pins slope j at exactly zero
/// (an infinite weight).
struct PenaltySpec {
    double lambda = 0.0;
    Eigen::VectorXd weights;
    std::vector<bool> exclude;

    static PenaltySpec uniform(Eigen::Index p, double lambda = 0.0);

    Eigen::Index size() const { return weights.size(); }
    void validate() const;
};

struct FitResult {
    Eigen::VectorXd beta;         // intercept followed by p slopes
    std::vector<int> active_set;  // indices into beta (1..p) of nonzero slopes
    double lambda = 0.0;
    Method method = Method::alasso;
    std::optional<double> sigma2_hat;
    int n_iterations = 0;
    FamilySpec family;
    // Posterior covariance V-hat of the full model. Present for wplasso,
    // whose predictive variance at x is sigma2_hat * (1 + x'V-hat x).
    std::optional<Eigen::MatrixXd> variance_shape;
    bool pilot_regularized = false;

    Eigen::Index zero_count() const;
};

struct SolverOptions {
    double tol = 1e-7;             // max coefficient change, standardized scale
    int max_sweeps = 10'000;
    double objective_tol = 1e-9;   // IRLS outer loop
    int max_outer = 100;
    bool polish = true;            // exact solve on the converged active set
};

/// sign(z) * max(|z| - gamma, 0). |z| == gamma gives 0.
double soft_threshold(double z, double gamma);

/// (1/n) sum_i w_i [b(x_i'beta) - t_i x_i'beta] + lambda sum_j w_j |beta_j|.
double penalized_objective(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                           const Eigen::VectorXd& targets, const Eigen::VectorXd& obs_weights,
                           const FamilySpec& family, const PenaltySpec& penalty);

/// Largest violation of the subgradient optimality conditions at beta.
double kkt_violation(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                     const Eigen::VectorXd& targets, const Eigen::VectorXd& obs_weights,
                     const FamilySpec& family, const PenaltySpec& penalty);

/// Minimizes (1/2n) sum_i w_i (t_i - x_i'beta)^2 + lambda sum_j w_j |beta_j|
/// by cyclic coordinate descent on internally standardized columns.
/// Throws ConvergenceError after max_sweeps.
FitResult fit_weighted_lasso_gaussian(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                                      const Eigen::VectorXd& obs_weights,
                                      const PenaltySpec& penalty,
                                      const SolverOptions& options = {},
                                      const std::optional<Eigen::VectorXd>& initial = std::nullopt);

/// Penalized GLM fit by IRLS around the Gaussian solver. Targets may be
/// fractional (predictive means).
FitResult fit_weighted_lasso_glm(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                                 const Eigen::VectorXd& obs_weights, const FamilySpec& family,
                                 const PenaltySpec& penalty, const SolverOptions& options = {},
                                 const std::optional<Eigen::VectorXd>& initial = std::nullopt);

FitResult fit_weighted_lasso_glm(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                                 const FamilySpec& family, const PenaltySpec& penalty,
                                 const SolverOptions& options = {});

/// Smallest lambda at which every penalized slope is zero.
double lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                  const Eigen::VectorXd& obs_weights, const PenaltySpec& penalty,
                  const FamilySpec& family);

double lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                  const PenaltySpec& penalty, const FamilySpec& family);

/// Log-spaced, descending: lambda_max down to lambda_max * min_ratio.
std::vector<double> lambda_grid(double lambda_max, int n_lambda, double min_ratio = 1e-4);

/// Warm-started fits along `grid` (taken in the order given).
std::vector<FitResult> fit_path(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                                const Eigen::VectorXd& obs_weights, const PenaltySpec& penalty,
                                const FamilySpec& family, const std::vector<double>& grid,
                                const SolverOptions& options = {});

std::vector<FitResult> regularization_path(const Eigen::MatrixXd& X,
                                           const Eigen::VectorXd& targets,
                                           const Eigen::VectorXd& obs_weights,
                                           const PenaltySpec& penalty, const FamilySpec& family,
                                           int n_lambda, const SolverOptions& options = {});

/// Unpenalized maximum likelihood by Newton/IRLS. Requires n > p + 1.
Eigen::VectorXd mle_fit(const Dataset& dataset);

/// Ridge-penalized likelihood maximizer; the intercept is not penalized.
Eigen::VectorXd ridge_fit(const Dataset& dataset, double ridge);

/// Default ridge strength for pilot fits: 1e-3 * trace(X'X) / p.
double default_pilot_ridge(const Eigen::MatrixXd& X);

struct PilotEstimate {
    Eigen::VectorXd beta;
    bool regularized = false;
};

/// MLE when n > p + 1, otherwise (or when the MLE fails and fallback is
/// allowed) the ridge estimate with default_pilot_ridge.
PilotEstimate pilot_estimate(const Dataset& dataset, bool allow_fallback = true);

/// Adaptive-lasso weights 1/|slope|; zero slopes are excluded.
PenaltySpec adaptive_weights(const Eigen::VectorXd& slopes);

}  // namespace plasso
