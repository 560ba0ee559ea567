#pragma once

#include <Eigen/Core>

namespace plasso {

/// Conjugate normal / inverse-gamma prior:
///   sigma^2 ~ IG(shape d/2, scale a/2),  beta | sigma^2 ~ N(m, sigma^2 V).
struct NIGPrior {
    Eigen::VectorXd m;
    Eigen::MatrixXd V;
    double a = 1.0;
    double d = 1.0;

    void validate() const;
};

/// Posterior summaries of the conjugate linear model. Predictive at x:
/// Student-t with df degrees of freedom, centre x'beta_tilde and variance
/// s2 * (1 + x'V_hat x).
struct LinearPosterior {
    Eigen::VectorXd beta_tilde;
    Eigen::MatrixXd V_hat;
    double s2 = 0.0;
    double df = 0.0;  // n + d

    /// w(x) = 1 + x'V_hat x.
    double w(const Eigen::VectorXd& x) const;
};

LinearPosterior conjugate_posterior(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                    const NIGPrior& prior);

/// The posterior re-expressed as a prior; conditioning it on zero rows
/// returns the same posterior.
NIGPrior as_prior(const LinearPosterior& posterior);

struct PredictiveMoments {
    double mean = 0.0;
    double scale = 0.0;     // s2 * w(x)
    double df = 0.0;
    double variance = 0.0;  // equals scale: s2 carries the n + d - 2 divisor
    double t_scale2 = 0.0;  // squared scale of the Student-t, scale * (df - 2) / df
};

PredictiveMoments predictive_moments(const Eigen::VectorXd& x, const LinearPosterior& posterior);

/// Unnormalized log density of the marginal posterior beta | D, a
/// multivariate t centred at beta_tilde.
double log_marginal_posterior(const Eigen::VectorXd& beta, const LinearPosterior& posterior);

inline constexpr double raftery_kappa = 2.85;
inline constexpr double raftery_a = 0.72;
inline constexpr double raftery_d = 2.58;

/// V = diag(s_y^2, kappa^2 / s_1^2, ..., kappa^2 / s_p^2), a = 0.72,
/// d = 2.58, m = (OLS intercept, 0, ..., 0). When X'X is singular the
/// intercept-only OLS value (mean of y) is used for m_0.
NIGPrior raftery_prior(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// g-prior covariance c (X'X)^-1.
Eigen::MatrixXd zellner_gprior(const Eigen::MatrixXd& X, double c);

/// g-prior with m = 0 and Raftery's (a, d). c <= 0 selects c = n.
NIGPrior gprior(const Eigen::MatrixXd& X, double c = 0.0);

/// V = scale * I, m = 0; the large-scale stand-in for a flat prior.
NIGPrior noninformative_prior(Eigen::Index dim, double scale = 1e8);

enum class TargetMode { plasso, wplasso };

struct PredictiveTargets {
    Eigen::VectorXd means;        // x_i'beta_tilde
    Eigen::VectorXd obs_weights;  // 1 or 1 / w(x_i)
    Eigen::VectorXd w_values;     // w(x_i) >= 1
    double s2 = 0.0;
    TargetMode mode = TargetMode::plasso;
};

PredictiveTargets make_targets(const Eigen::MatrixXd& X_future, const LinearPosterior& posterior,
                               TargetMode mode);

/// [sum_i s2 w(x_i) + sum_i (x_i'beta_tilde - x_i'beta_hat)^2] / N.
double sigma2_plasso(const PredictiveTargets& targets, const Eigen::MatrixXd& X_future,
                     const Eigen::VectorXd& beta_hat);

/// s2 + (1/N) sum_i (x_i'beta_tilde - x_i'beta_hat)^2 / w(x_i).
double sigma2_wplasso(const PredictiveTargets& targets, const Eigen::MatrixXd& X_future,
                      const Eigen::VectorXd& beta_hat);

}  // namespace plasso
