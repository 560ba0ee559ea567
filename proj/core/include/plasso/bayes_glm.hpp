#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "plasso/glm.hpp"

namespace plasso {

/// D(gamma0, alpha0): p(beta) ∝ exp(gamma0 / a(phi) [alpha0'theta - 1'b(theta)]).
struct ChenIbrahimPrior {
    double gamma0 = 0.0;
    Eigen::VectorXd alpha0;  // prior guess for E(y), one entry per observation
};

/// Conjugate update: D(1 + gamma0, (gamma0 alpha0 + y) / (1 + gamma0)).
ChenIbrahimPrior chen_ibrahim_posterior(const ChenIbrahimPrior& prior, const Eigen::VectorXd& y);

/// gamma0 = 1/n and alpha0 = MLE fitted means.
ChenIbrahimPrior default_chen_ibrahim_prior(const Dataset& dataset);

/// gamma / a(phi) [alpha'X beta - 1'b(X beta)], up to an additive constant.
double log_posterior_density(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                             const ChenIbrahimPrior& params, const FamilySpec& family);

Eigen::VectorXd log_posterior_gradient(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                                       const ChenIbrahimPrior& params, const FamilySpec& family);

/// Independent Cauchy priors: scale 10 on the intercept, 2.5 on slopes,
/// applied to covariates standardized to mean 0 and sd 0.5.
struct GelmanPrior {
    double intercept_scale = 10.0;
    double slope_scale = 2.5;
    bool skip_binary = false;  // leave 0/1 columns unstandardized
};

/// x_std = (x - mean) * factor for every covariate column.
struct ColumnScaling {
    double mean = 0.0;
    double factor = 1.0;
};

struct Standardization {
    std::vector<ColumnScaling> columns;  // one entry per covariate (p)

    Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const;
    Eigen::VectorXd to_original(const Eigen::VectorXd& beta_std) const;
    Eigen::VectorXd to_standardized(const Eigen::VectorXd& beta) const;
};

struct StandardizedDesign {
    Eigen::MatrixXd X;
    Standardization scaling;
};

StandardizedDesign gelman_standardize(const Eigen::MatrixXd& X, bool skip_binary = false);

/// Sum of Cauchy log densities on the standardized scale.
double log_prior_gelman(const Eigen::VectorXd& beta_std, const GelmanPrior& prior);

/// Log likelihood (a(phi) = 1, constants dropped) plus log_prior_gelman.
double gelman_log_posterior(const Eigen::VectorXd& beta_std, const Eigen::MatrixXd& X_std,
                            const Eigen::VectorXd& y, const FamilySpec& family,
                            const GelmanPrior& prior);

struct McmcConfig {
    int n_draws = 10'000;
    int burn_in = 1'000;
    double step_scale = 0.5;
    std::uint64_t seed = 1;
    bool adapt = true;  // tune per-component steps towards 20-40% acceptance during burn-in
};

struct McmcSamples {
    Eigen::MatrixXd draws;  // n_draws x dim
    double acceptance_rate = 0.0;
    Eigen::VectorXd step_sizes;
};

using LogDensity = std::function<double(const Eigen::VectorXd&)>;

/// Component-wise Gaussian random-walk Metropolis. One draw is one sweep over
/// all components. Deterministic for a fixed seed.
McmcSamples rw_metropolis(const LogDensity& log_target, const Eigen::VectorXd& init,
                          const McmcConfig& cfg);

/// Geyer initial-positive-sequence effective sample size.
double effective_sample_size(const Eigen::VectorXd& series);

struct PredictiveMeans {
    Eigen::VectorXd means;
    Eigen::VectorXd mc_se;  // batch-means Monte-Carlo standard errors
};

/// Averages b'(x_i'beta_t) over draws.
PredictiveMeans predictive_means_mcmc(const Eigen::MatrixXd& draws, const Eigen::MatrixXd& X_future,
                                      const FamilySpec& family);

/// Posterior mode under the Gelman prior, on the original scale.
Eigen::VectorXd gelman_posterior_mode(const Dataset& dataset, const GelmanPrior& prior);

/// b'(X_future beta_mode).
Eigen::VectorXd predictive_means_plugin(const Dataset& dataset, const GelmanPrior& prior,
                                        const Eigen::MatrixXd& X_future);
Eigen::VectorXd predictive_means_plugin(const Dataset& dataset, const GelmanPrior& prior);

/// Posterior draws under the Gelman prior, returned on the original scale.
McmcSamples sample_gelman_posterior(const Dataset& dataset, const GelmanPrior& prior,
                                    const McmcConfig& cfg);

/// Posterior draws under a Chen-Ibrahim prior (after the conjugate update).
McmcSamples sample_chen_ibrahim_posterior(const Dataset& dataset, const ChenIbrahimPrior& prior,
                                          const McmcConfig& cfg);

}  // namespace plasso
