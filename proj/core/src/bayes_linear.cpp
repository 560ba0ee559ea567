#include "plasso/bayes_linear.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "plasso/error.hpp"

namespace plasso {

namespace {

Eigen::LLT<Eigen::MatrixXd> cholesky(const Eigen::MatrixXd& A, const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success) {
        throw NumericalError(std::string(what) + ": matrix is not positive definite");
    }
    return llt;
}

double sample_variance(const Eigen::VectorXd& v) {
    if (v.size() < 2) return 0.0;
    const double mean = v.mean();
    return (v.array() - mean).square().sum() / static_cast<double>(v.size() - 1);
}

}  // namespace

void NIGPrior::validate() const {
    if (V.rows() != V.cols() || V.rows() != m.size()) {
        throw DimensionError("NIG prior: m and V have inconsistent sizes");
    }
    if (!(a > 0.0) || !(d > 0.0)) throw DomainError("NIG prior: a and d must be positive");
    if (!V.isApprox(V.transpose(), 1e-10)) throw DomainError("NIG prior: V is not symmetric");
    cholesky(V, "NIG prior V");
}

double LinearPosterior::w(const Eigen::VectorXd& x) const { return 1.0 + x.dot(V_hat * x); }

LinearPosterior conjugate_posterior(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                    const NIGPrior& prior) {
    prior.validate();
    if (X.cols() != prior.m.size()) throw DimensionError("posterior: X and prior differ in width");
    if (X.rows() != y.size()) throw DimensionError("posterior: X and y differ in length");
    const double n = static_cast<double>(X.rows());
    if (!(n + prior.d > 2.0)) throw DomainError("posterior: need n + d > 2");

    const Eigen::Index k = X.cols();
    const auto prior_llt = cholesky(prior.V, "NIG prior V");
    const Eigen::MatrixXd V_inv = prior_llt.solve(Eigen::MatrixXd::Identity(k, k));
    Eigen::MatrixXd precision = V_inv;
    precision.selfadjointView<Eigen::Lower>().rankUpdate(X.transpose());
    precision = precision.selfadjointView<Eigen::Lower>();
    const auto llt = cholesky(precision, "posterior precision");

    const Eigen::VectorXd b = V_inv * prior.m + X.transpose() * y;
    LinearPosterior post;
    post.beta_tilde = llt.solve(b);
    post.V_hat = llt.solve(Eigen::MatrixXd::Identity(k, k));
    post.V_hat = 0.5 * (post.V_hat + post.V_hat.transpose());
    // a + m'V^-1 m + y'y - b'(V^-1 + X'X)^-1 b, rewritten as a sum of
    // nonnegative terms to avoid cancellation.
    const Eigen::VectorXd resid = y - X * post.beta_tilde;
    const Eigen::VectorXd shift = post.beta_tilde - prior.m;
    const double scale = prior.a + resid.squaredNorm() + shift.dot(V_inv * shift);
    post.df = n + prior.d;
    post.s2 = scale / (post.df - 2.0);
    return post;
}

NIGPrior as_prior(const LinearPosterior& posterior) {
    return {posterior.beta_tilde, posterior.V_hat, posterior.s2 * (posterior.df - 2.0),
            posterior.df};
}

PredictiveMoments predictive_moments(const Eigen::VectorXd& x, const LinearPosterior& posterior) {
    if (x.size() != posterior.beta_tilde.size()) {
        throw DimensionError("predictive_moments: x has wrong length");
    }
    if (!(posterior.df > 0.0)) throw DomainError("predictive_moments: df must be positive");
    PredictiveMoments out;
    out.mean = x.dot(posterior.beta_tilde);
    out.scale = posterior.s2 * posterior.w(x);
    out.df = posterior.df;
    out.variance = out.scale;
    out.t_scale2 = out.scale * (out.df - 2.0) / out.df;
    return out;
}

double log_marginal_posterior(const Eigen::VectorXd& beta, const LinearPosterior& posterior) {
    const Eigen::VectorXd diff = beta - posterior.beta_tilde;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(posterior.V_hat);
    const double quad = diff.dot(ldlt.solve(diff));
    const double a_star = posterior.s2 * (posterior.df - 2.0);
    const double k = static_cast<double>(beta.size());
    return -0.5 * (posterior.df + k) * std::log1p(quad / a_star);
}

NIGPrior raftery_prior(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size()) throw DimensionError("raftery_prior: X and y differ in length");
    const Eigen::Index k = X.cols();
    NIGPrior prior;
    prior.a = raftery_a;
    prior.d = raftery_d;
    prior.V = Eigen::MatrixXd::Zero(k, k);
    const double sy2 = sample_variance(y);
    if (!(sy2 > 0.0)) throw DataError("raftery_prior: response has zero variance");
    prior.V(0, 0) = sy2;
    for (Eigen::Index j = 1; j < k; ++j) {
        const double s2 = sample_variance(X.col(j));
        if (!(s2 > 0.0)) {
            throw DataError("raftery_prior: covariate column " + std::to_string(j) +
                            " has zero variance");
        }
        prior.V(j, j) = raftery_kappa * raftery_kappa / s2;
    }
    prior.m = Eigen::VectorXd::Zero(k);
    prior.m[0] = y.mean();
    if (X.rows() > k) {
        const Eigen::LLT<Eigen::MatrixXd> llt(X.transpose() * X);
        if (llt.info() == Eigen::Success && llt.rcond() > 1e-14) {
            prior.m[0] = llt.solve(X.transpose() * y)[0];
        }
    }
    return prior;
}

Eigen::MatrixXd zellner_gprior(const Eigen::MatrixXd& X, double c) {
    if (!(c > 0.0)) throw DomainError("g-prior: c must be positive");
    const Eigen::LLT<Eigen::MatrixXd> llt(X.transpose() * X);
    if (llt.info() != Eigen::Success || llt.rcond() < 1e-14) {
        throw NumericalError("g-prior: X'X is singular");
    }
    Eigen::MatrixXd V = c * llt.solve(Eigen::MatrixXd::Identity(X.cols(), X.cols()));
    return 0.5 * (V + V.transpose());
}

NIGPrior gprior(const Eigen::MatrixXd& X, double c) {
    const double scale = c > 0.0 ? c : static_cast<double>(X.rows());
    return {Eigen::VectorXd::Zero(X.cols()), zellner_gprior(X, scale), raftery_a, raftery_d};
}

NIGPrior noninformative_prior(Eigen::Index dim, double scale) {
    return {Eigen::VectorXd::Zero(dim), scale * Eigen::MatrixXd::Identity(dim, dim), raftery_a,
            raftery_d};
}

PredictiveTargets make_targets(const Eigen::MatrixXd& X_future, const LinearPosterior& posterior,
                               TargetMode mode) {
    if (X_future.cols() != posterior.beta_tilde.size()) {
        throw DimensionError("make_targets: future design has wrong width");
    }
    PredictiveTargets t;
    t.mode = mode;
    t.s2 = posterior.s2;
    t.means = X_future * posterior.beta_tilde;
    t.w_values = (X_future * posterior.V_hat).cwiseProduct(X_future).rowwise().sum();
    t.w_values.array() += 1.0;
    t.obs_weights = mode == TargetMode::plasso
                        ? Eigen::VectorXd::Ones(X_future.rows())
                        : Eigen::VectorXd(t.w_values.cwiseInverse());
    return t;
}

double sigma2_plasso(const PredictiveTargets& targets, const Eigen::MatrixXd& X_future,
                     const Eigen::VectorXd& beta_hat) {
    const double N = static_cast<double>(X_future.rows());
    if (N < 1) throw DimensionError("sigma2_plasso: no future points");
    const Eigen::VectorXd dev = targets.means - X_future * beta_hat;
    return (targets.s2 * targets.w_values.sum() + dev.squaredNorm()) / N;
}

double sigma2_wplasso(const PredictiveTargets& targets, const Eigen::MatrixXd& X_future,
                      const Eigen::VectorXd& beta_hat) {
    const double N = static_cast<double>(X_future.rows());
    if (N < 1) throw DimensionError("sigma2_wplasso: no future points");
    const Eigen::VectorXd dev = targets.means - X_future * beta_hat;
    return targets.s2 + dev.cwiseAbs2().cwiseQuotient(targets.w_values).sum() / N;
}

}  // namespace plasso
