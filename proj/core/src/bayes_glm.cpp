#include "plasso/bayes_glm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "plasso/error.hpp"
#include "plasso/lasso.hpp"

namespace plasso {

ChenIbrahimPrior chen_ibrahim_posterior(const ChenIbrahimPrior& prior, const Eigen::VectorXd& y) {
    if (prior.alpha0.size() != y.size()) {
        throw DimensionError("chen_ibrahim_posterior: alpha0 and y differ in length");
    }
    if (!(prior.gamma0 >= 0.0)) throw DomainError("chen_ibrahim_posterior: gamma0 must be >= 0");
    ChenIbrahimPrior post;
    post.gamma0 = 1.0 + prior.gamma0;
    post.alpha0 = (prior.gamma0 * prior.alpha0 + y) / post.gamma0;
    return post;
}

ChenIbrahimPrior default_chen_ibrahim_prior(const Dataset& dataset) {
    const Eigen::VectorXd beta = pilot_estimate(dataset).beta;
    const Eigen::VectorXd eta = dataset.X * beta;
    ChenIbrahimPrior prior;
    prior.gamma0 = 1.0 / static_cast<double>(dataset.n());
    prior.alpha0.resize(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        prior.alpha0[i] = family_mean(dataset.family, eta[i]);
    }
    return prior;
}

double log_posterior_density(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                             const ChenIbrahimPrior& params, const FamilySpec& family) {
    if (X.cols() != beta.size() || X.rows() != params.alpha0.size()) {
        throw DimensionError("log_posterior_density: dimension mismatch");
    }
    const Eigen::VectorXd eta = X * beta;
    double total = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        total += params.alpha0[i] * eta[i] - family_b(family, eta[i]);
    }
    return params.gamma0 / family.a_phi * total;
}

Eigen::VectorXd log_posterior_gradient(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                                       const ChenIbrahimPrior& params, const FamilySpec& family) {
    if (X.cols() != beta.size() || X.rows() != params.alpha0.size()) {
        throw DimensionError("log_posterior_gradient: dimension mismatch");
    }
    const Eigen::VectorXd eta = X * beta;
    Eigen::VectorXd r(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        r[i] = params.alpha0[i] - family_mean(family, eta[i]);
    }
    return params.gamma0 / family.a_phi * (X.transpose() * r);
}

Eigen::MatrixXd Standardization::apply(const Eigen::MatrixXd& X) const {
    if (X.cols() != static_cast<Eigen::Index>(columns.size()) + 1) {
        throw DimensionError("standardization: column count mismatch");
    }
    Eigen::MatrixXd out = X;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const auto c = static_cast<Eigen::Index>(j + 1);
        out.col(c) = (X.col(c).array() - columns[j].mean) * columns[j].factor;
    }
    return out;
}

Eigen::VectorXd Standardization::to_original(const Eigen::VectorXd& beta_std) const {
    Eigen::VectorXd beta = beta_std;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const auto c = static_cast<Eigen::Index>(j + 1);
        beta[c] = beta_std[c] * columns[j].factor;
        beta[0] -= beta[c] * columns[j].mean;
    }
    return beta;
}

Eigen::VectorXd Standardization::to_standardized(const Eigen::VectorXd& beta) const {
    Eigen::VectorXd beta_std = beta;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const auto c = static_cast<Eigen::Index>(j + 1);
        beta_std[c] = beta[c] / columns[j].factor;
        beta_std[0] += beta[c] * columns[j].mean;
    }
    return beta_std;
}

StandardizedDesign gelman_standardize(const Eigen::MatrixXd& X, bool skip_binary) {
    if (X.rows() < 2) throw DataError("gelman_standardize: need at least two rows");
    StandardizedDesign out;
    out.scaling.columns.resize(static_cast<std::size_t>(X.cols() - 1));
    for (Eigen::Index c = 1; c < X.cols(); ++c) {
        const auto col = X.col(c);
        auto& rec = out.scaling.columns[static_cast<std::size_t>(c - 1)];
        if (skip_binary && (col.array() == 0.0 || col.array() == 1.0).all()) continue;
        const double mean = col.mean();
        const double sd = std::sqrt((col.array() - mean).square().sum() /
                                    static_cast<double>(X.rows() - 1));
        if (!(sd > 0.0)) {
            throw DataError("gelman_standardize: covariate column " + std::to_string(c) +
                            " has zero variance");
        }
        rec.mean = mean;
        rec.factor = 0.5 / sd;
    }
    out.X = out.scaling.apply(X);
    return out;
}

double log_prior_gelman(const Eigen::VectorXd& beta_std, const GelmanPrior& prior) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < beta_std.size(); ++j) {
        const double s = j == 0 ? prior.intercept_scale : prior.slope_scale;
        const double z = beta_std[j] / s;
        total -= std::log(std::numbers::pi * s) + std::log1p(z * z);
    }
    return total;
}

double gelman_log_posterior(const Eigen::VectorXd& beta_std, const Eigen::MatrixXd& X_std,
                            const Eigen::VectorXd& y, const FamilySpec& family,
                            const GelmanPrior& prior) {
    const Eigen::VectorXd eta = X_std * beta_std;
    double loglik = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        if (!std::isfinite(eta[i])) return -std::numeric_limits<double>::infinity();
        loglik += y[i] * eta[i] - family_b(family, eta[i]);
    }
    return loglik / family.a_phi + log_prior_gelman(beta_std, prior);
}

namespace {

std::mt19937_64 make_engine(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      0x5eedu};
    return std::mt19937_64(seq);
}

// Newton ascent on the standardized scale. Where the Cauchy log density is
// convex (|beta| > scale) its curvature is replaced by the majorizing weight
// 2 / (s^2 + beta^2) so the system stays positive definite.
Eigen::VectorXd gelman_mode_standardized(const Eigen::MatrixXd& X_std, const Eigen::VectorXd& y,
                                         const FamilySpec& family, const GelmanPrior& prior) {
    const Eigen::Index k = X_std.cols();
    Eigen::VectorXd scale = Eigen::VectorXd::Constant(k, prior.slope_scale);
    scale[0] = prior.intercept_scale;
    auto objective = [&](const Eigen::VectorXd& b) {
        return gelman_log_posterior(b, X_std, y, family, prior);
    };
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
    beta[0] = family_link(family, y.mean());
    double current = objective(beta);
    for (int iter = 0; iter < 500; ++iter) {
        const Eigen::VectorXd eta = X_std * beta;
        Eigen::VectorXd resid(eta.size()), v(eta.size());
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            resid[i] = y[i] - family_mean(family, eta[i]);
            v[i] = family_variance(family, eta[i]);
        }
        Eigen::VectorXd gradient = X_std.transpose() * resid / family.a_phi;
        Eigen::MatrixXd H =
            X_std.transpose() * (X_std.array().colwise() * v.array()).matrix() / family.a_phi;
        for (Eigen::Index j = 0; j < k; ++j) {
            const double s2 = scale[j] * scale[j];
            const double b2 = beta[j] * beta[j];
            gradient[j] -= 2.0 * beta[j] / (s2 + b2);
            const double curvature = 2.0 * (s2 - b2) / ((s2 + b2) * (s2 + b2));
            H(j, j) += curvature > 0.0 ? curvature : 2.0 / (s2 + b2);
        }
        if (gradient.cwiseAbs().maxCoeff() < 1e-10) return beta;
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
        if (ldlt.info() != Eigen::Success) throw NumericalError("posterior mode: singular Hessian");
        Eigen::VectorXd step = ldlt.solve(gradient);
        double next = objective(beta + step);
        for (int h = 0; h < 50 && !(next >= current); ++h) {
            step *= 0.5;
            next = objective(beta + step);
        }
        if (!(next >= current)) return beta;
        beta += step;
        current = next;
        if (step.cwiseAbs().maxCoeff() < 1e-13 * (1.0 + beta.cwiseAbs().maxCoeff())) return beta;
    }
    throw ConvergenceError("posterior mode search did not converge", beta, 500);
}

}  // namespace

McmcSamples rw_metropolis(const LogDensity& log_target, const Eigen::VectorXd& init,
                          const McmcConfig& cfg) {
    if (cfg.n_draws <= 0) throw std::invalid_argument("rw_metropolis: n_draws must be positive");
    if (cfg.burn_in < 0) throw std::invalid_argument("rw_metropolis: burn_in must be >= 0");
    if (!(cfg.step_scale >= 0.0)) throw DomainError("rw_metropolis: step_scale must be >= 0");
    double current_lp = log_target(init);
    if (!std::isfinite(current_lp)) {
        throw DomainError("rw_metropolis: log target is not finite at the initial state");
    }
    const Eigen::Index dim = init.size();
    auto engine = make_engine(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    McmcSamples out;
    out.draws.resize(cfg.n_draws, dim);
    out.step_sizes = Eigen::VectorXd::Constant(dim, cfg.step_scale);
    Eigen::VectorXd state = init;
    constexpr int window = 50;
    std::vector<int> window_accepts(static_cast<std::size_t>(dim), 0);
    long long proposals = 0, accepted = 0;

    const int total = cfg.burn_in + cfg.n_draws;
    for (int it = 0; it < total; ++it) {
        const bool burning = it < cfg.burn_in;
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double old = state[j];
            state[j] = old + out.step_sizes[j] * normal(engine);
            const double lp = log_target(state);
            const bool accept = std::isfinite(lp) && std::log(uniform(engine)) < lp - current_lp;
            if (accept) {
                current_lp = lp;
            } else {
                state[j] = old;
            }
            if (burning) {
                window_accepts[static_cast<std::size_t>(j)] += accept ? 1 : 0;
            } else {
                ++proposals;
                accepted += accept ? 1 : 0;
            }
        }
        if (burning && cfg.adapt && (it + 1) % window == 0) {
            for (Eigen::Index j = 0; j < dim; ++j) {
                const double rate = window_accepts[static_cast<std::size_t>(j)] / double(window);
                if (rate < 0.2) out.step_sizes[j] *= 0.7;
                if (rate > 0.4) out.step_sizes[j] *= 1.4;
                window_accepts[static_cast<std::size_t>(j)] = 0;
            }
        }
        if (!burning) out.draws.row(it - cfg.burn_in) = state.transpose();
    }
    out.acceptance_rate = proposals > 0 ? double(accepted) / double(proposals) : 0.0;
    return out;
}

double effective_sample_size(const Eigen::VectorXd& series) {
    const Eigen::Index n = series.size();
    if (n < 4) return static_cast<double>(n);
    const Eigen::VectorXd centered = series.array() - series.mean();
    const double var0 = centered.squaredNorm() / static_cast<double>(n);
    if (!(var0 > 0.0)) return static_cast<double>(n);
    auto rho = [&](Eigen::Index lag) {
        return centered.head(n - lag).dot(centered.tail(n - lag)) / static_cast<double>(n) / var0;
    };
    double sum = 0.0;
    for (Eigen::Index k = 0; 2 * k + 1 < n; ++k) {
        const double pair = rho(2 * k) + rho(2 * k + 1);
        if (pair <= 0.0) break;
        sum += pair;
    }
    const double tau = std::max(-1.0 + 2.0 * sum, 1.0 / static_cast<double>(n));
    return static_cast<double>(n) / tau;
}

PredictiveMeans predictive_means_mcmc(const Eigen::MatrixXd& draws, const Eigen::MatrixXd& X_future,
                                      const FamilySpec& family) {
    if (draws.rows() == 0) throw std::invalid_argument("predictive_means_mcmc: no draws");
    if (draws.cols() != X_future.cols()) {
        throw DimensionError("predictive_means_mcmc: draw width does not match design");
    }
    const Eigen::Index T = draws.rows();
    const Eigen::Index N = X_future.rows();
    Eigen::MatrixXd mu = X_future * draws.transpose();  // N x T
    for (Eigen::Index t = 0; t < T; ++t) {
        for (Eigen::Index i = 0; i < N; ++i) mu(i, t) = family_mean(family, mu(i, t));
    }
    PredictiveMeans out;
    out.means = mu.rowwise().mean();
    out.mc_se = Eigen::VectorXd::Zero(N);
    const Eigen::Index batches = std::min<Eigen::Index>(50, T);
    const Eigen::Index size = T / batches;
    if (batches >= 2) {
        for (Eigen::Index i = 0; i < N; ++i) {
            Eigen::VectorXd bm(batches);
            for (Eigen::Index b = 0; b < batches; ++b) bm[b] = mu.row(i).segment(b * size, size).mean();
            const double m = bm.mean();
            const double var = (bm.array() - m).square().sum() / static_cast<double>(batches - 1);
            out.mc_se[i] = std::sqrt(var / static_cast<double>(batches));
        }
    }
    return out;
}

Eigen::VectorXd gelman_posterior_mode(const Dataset& dataset, const GelmanPrior& prior) {
    dataset.validate();
    const StandardizedDesign design = gelman_standardize(dataset.X, prior.skip_binary);
    const Eigen::VectorXd mode =
        gelman_mode_standardized(design.X, dataset.y, dataset.family, prior);
    return design.scaling.to_original(mode);
}

Eigen::VectorXd predictive_means_plugin(const Dataset& dataset, const GelmanPrior& prior,
                                        const Eigen::MatrixXd& X_future) {
    const Eigen::VectorXd mode = gelman_posterior_mode(dataset, prior);
    if (X_future.cols() != mode.size()) {
        throw DimensionError("predictive_means_plugin: future design has wrong width");
    }
    Eigen::VectorXd eta = X_future * mode;
    for (Eigen::Index i = 0; i < eta.size(); ++i) eta[i] = family_mean(dataset.family, eta[i]);
    return eta;
}

Eigen::VectorXd predictive_means_plugin(const Dataset& dataset, const GelmanPrior& prior) {
    return predictive_means_plugin(dataset, prior, dataset.X);
}

namespace {

McmcSamples to_original_scale(McmcSamples samples, const Standardization& scaling) {
    for (Eigen::Index t = 0; t < samples.draws.rows(); ++t) {
        const Eigen::VectorXd row = samples.draws.row(t).transpose();
        samples.draws.row(t) = scaling.to_original(row).transpose();
    }
    return samples;
}

}  // namespace

McmcSamples sample_gelman_posterior(const Dataset& dataset, const GelmanPrior& prior,
                                    const McmcConfig& cfg) {
    dataset.validate();
    const StandardizedDesign design = gelman_standardize(dataset.X, prior.skip_binary);
    const Eigen::VectorXd mode =
        gelman_mode_standardized(design.X, dataset.y, dataset.family, prior);
    const LogDensity target = [&](const Eigen::VectorXd& b) {
        return gelman_log_posterior(b, design.X, dataset.y, dataset.family, prior);
    };
    return to_original_scale(rw_metropolis(target, mode, cfg), design.scaling);
}

McmcSamples sample_chen_ibrahim_posterior(const Dataset& dataset, const ChenIbrahimPrior& prior,
                                          const McmcConfig& cfg) {
    dataset.validate();
    const ChenIbrahimPrior post = chen_ibrahim_posterior(prior, dataset.y);
    const StandardizedDesign design = gelman_standardize(dataset.X);
    // The posterior mode solves X'(alpha - b'(X beta)) = 0: an unpenalized
    // fit to the pseudo-responses alpha.
    const FitResult mode = fit_weighted_lasso_glm(design.X, post.alpha0, dataset.family,
                                                  PenaltySpec::uniform(dataset.p(), 0.0));
    const LogDensity target = [&](const Eigen::VectorXd& b) {
        const Eigen::VectorXd eta = design.X * b;
        if (!eta.allFinite()) return -std::numeric_limits<double>::infinity();
        return log_posterior_density(b, design.X, post, dataset.family);
    };
    return to_original_scale(rw_metropolis(target, mode.beta, cfg), design.scaling);
}

}  // namespace plasso
