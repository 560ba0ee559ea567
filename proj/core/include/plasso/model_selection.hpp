#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "plasso/bayes_glm.hpp"
#include "plasso/bayes_linear.hpp"
#include "plasso/glm.hpp"
#include "plasso/lasso.hpp"

namespace plasso {

/// Full-model prior. raftery, gprior and noninformative apply to Gaussian
/// data; gelman and chen_ibrahim to Binomial/Poisson data.
enum class PriorKind { raftery, gprior, noninformative, gelman, chen_ibrahim };

std::string_view to_string(PriorKind prior);
PriorKind prior_from_string(std::string_view name);

/// How GLM predictive means are computed.
enum class GlmTargets { plugin, mcmc };

std::string_view to_string(GlmTargets targets);
GlmTargets glm_targets_from_string(std::string_view name);

struct MethodConfig {
    Method method = Method::plasso;
    PriorKind prior = PriorKind::raftery;
    GlmTargets glm_targets = GlmTargets::plugin;
    double gprior_c = 0.0;  // <= 0 means c = n
    double noninformative_scale = 1e8;
    McmcConfig mcmc;
    GelmanPrior gelman;
    bool pilot_posterior_mode = false;  // adaptive weights from the posterior mode instead of the MLE
    std::optional<Eigen::MatrixXd> future_points;  // with intercept column; default: training X
    SolverOptions solver;
};

/// Everything needed to run the penalized solver for one method on one
/// training set: the rows fitted, their pseudo-responses and weights, and
/// the adaptive penalty weights.
struct PreparedProblem {
    Method method = Method::alasso;
    FamilySpec family;
    Eigen::MatrixXd design;
    Eigen::VectorXd targets;
    Eigen::VectorXd obs_weights;
    PenaltySpec penalty;
    std::optional<LinearPosterior> posterior;
    std::optional<PredictiveTargets> linear_targets;
    bool pilot_regularized = false;
    Eigen::MatrixXd train_X;
    Eigen::VectorXd train_y;
    SolverOptions solver;
};

PreparedProblem prepare_problem(const Dataset& train, const MethodConfig& config);

double lambda_max(const PreparedProblem& problem);

/// Fit at one lambda; fills method, sigma2_hat (Gaussian) and, for wplasso,
/// the predictive variance shape.
FitResult fit_prepared(const PreparedProblem& problem, double lambda,
                       const std::optional<Eigen::VectorXd>& initial = std::nullopt);

std::vector<FitResult> fit_prepared_path(const PreparedProblem& problem,
                                         const std::vector<double>& grid);

FitResult fit_method(const Dataset& train, const MethodConfig& config, double lambda);

/// Log density of one observation under a fitted model.
double fit_log_density(const FitResult& fit, const Eigen::VectorXd& x, double y);

/// Partial predictive score: mean negative log density over the set.
double pps(const FitResult& fit, const Dataset& prediction_set);

/// pps minus 0.5 log(2 pi) for Gaussian fits, the constant-free convention.
double pps_constant_free(const FitResult& fit, const Dataset& prediction_set);

struct CvOptions {
    int k = 5;
    std::uint64_t seed = 1;
    int n_lambda = 100;
    double lambda_min_ratio = 0.0;    // <= 0: 1e-4, or 1e-2 when n <= p + 1
    std::vector<double> lambda_grid;  // explicit grid; overrides n_lambda when non-empty
    std::vector<int> groups;          // rows sharing a group id share a fold
};

struct CVResult {
    std::vector<double> lambda_grid;
    std::vector<double> cv_scores;
    double lambda_star = 0.0;
    int best_index = 0;
    std::vector<int> fold_assignments;
    std::vector<Eigen::MatrixXd> fold_coefficients;  // per fold: (p+1) x n_lambda
};

/// Fold ids in [0, k); fold sizes (in units of groups) differ by at most one.
std::vector<int> assign_folds(Eigen::Index n, int k, std::uint64_t seed,
                              const std::vector<int>& groups = {});

/// Default lambda grid for a method on a training set. min_ratio <= 0 picks
/// 1e-4, or 1e-2 when the training set has no more rows than coefficients.
std::vector<double> default_lambda_grid(const Dataset& train, const MethodConfig& config,
                                        int n_lambda, double min_ratio = 0.0);

/// K-fold CV over a common lambda grid. Pilot weights, posterior and targets
/// are recomputed on each training split; held-out rows are scored by the
/// negative log density of their observed responses.
CVResult kfold_cv(const Dataset& dataset, const MethodConfig& config, const CvOptions& options);

}  // namespace plasso
