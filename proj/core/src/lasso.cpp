#include "plasso/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "plasso/error.hpp"

namespace plasso {

std::string_view to_string(Method method) {
    switch (method) {
        case Method::alasso: return "alasso";
        case Method::plasso: return "plasso";
        case Method::wplasso: return "wplasso";
    }
    return "unknown";
}

Method method_from_string(std::string_view name) {
    if (name == "alasso") return Method::alasso;
    if (name == "plasso") return Method::plasso;
    if (name == "wplasso") return Method::wplasso;
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

PenaltySpec PenaltySpec::uniform(Eigen::Index p, double lambda) {
    PenaltySpec spec;
    spec.lambda = lambda;
    spec.weights = Eigen::VectorXd::Ones(p);
    spec.exclude.assign(static_cast<std::size_t>(p), false);
    return spec;
}

void PenaltySpec::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("penalty: lambda must be finite and nonnegative");
    }
    if (static_cast<Eigen::Index>(exclude.size()) != weights.size()) {
        throw DimensionError("penalty: weights and exclude mask differ in length");
    }
    for (Eigen::Index j = 0; j < weights.size(); ++j) {
        if (exclude[static_cast<std::size_t>(j)]) continue;
        if (!(weights[j] >= 0.0) || !std::isfinite(weights[j])) {
            throw DomainError("penalty: weight " + std::to_string(j + 1) +
                              " must be finite and nonnegative");
        }
    }
}

Eigen::Index FitResult::zero_count() const {
    return (beta.size() - 1) - static_cast<Eigen::Index>(active_set.size());
}

double soft_threshold(double z, double gamma) {
    if (z > gamma) return z - gamma;
    if (z < -gamma) return z + gamma;
    return 0.0;
}

namespace {

void check_shapes(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                  const Eigen::VectorXd& obs_weights, const PenaltySpec& penalty) {
    if (X.cols() < 1) throw DimensionError("design matrix has no columns");
    if (targets.size() != X.rows() || obs_weights.size() != X.rows()) {
        throw DimensionError("targets/weights length does not match design rows");
    }
    if (penalty.size() != X.cols() - 1) {
        std::ostringstream msg;
        msg << "penalty has " << penalty.size() << " weights for " << X.cols() - 1 << " slopes";
        throw DimensionError(msg.str());
    }
    penalty.validate();
    if (!X.allFinite() || !targets.allFinite()) throw DataError("non-finite design or targets");
    if (!obs_weights.allFinite() || (obs_weights.array() < 0.0).any()) {
        throw DomainError("observation weights must be finite and nonnegative");
    }
    if (!(obs_weights.sum() > 0.0)) throw DomainError("observation weights are all zero");
}

std::vector<int> nonzero_slopes(const Eigen::VectorXd& beta) {
    std::vector<int> active;
    for (Eigen::Index j = 1; j < beta.size(); ++j) {
        if (beta[j] != 0.0) active.push_back(static_cast<int>(j));
    }
    return active;
}

// Coordinate descent for the weighted quadratic problem on columns centered
// by weighted means and scaled to unit weighted variance. With weighted
// centering the intercept decouples, so it is recovered after the fact.
class GaussianDescent {
public:
    GaussianDescent(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                    const Eigen::VectorXd& obs_weights, const PenaltySpec& penalty)
        : n_(static_cast<double>(X.rows())), p_(X.cols() - 1) {
        const double total = obs_weights.sum();
        curvature_ = total / n_;
        target_mean_ = obs_weights.dot(targets) / total;
        mean_.resize(p_);
        scale_.resize(p_);
        threshold_.resize(p_);
        free_.assign(static_cast<std::size_t>(p_), true);
        Z_.resize(X.rows(), p_);
        for (Eigen::Index j = 0; j < p_; ++j) {
            const auto col = X.col(j + 1);
            mean_[j] = obs_weights.dot(col) / total;
            const Eigen::VectorXd centered = col.array() - mean_[j];
            const double var = obs_weights.dot(centered.cwiseAbs2()) / total;
            const double sd = std::sqrt(var);
            const bool constant = !(sd > 1e-12 * (1.0 + std::abs(mean_[j])));
            scale_[j] = constant ? 1.0 : sd;
            Z_.col(j) = centered / scale_[j];
            if (constant || penalty.exclude[static_cast<std::size_t>(j)]) {
                free_[static_cast<std::size_t>(j)] = false;
            }
            threshold_[j] = penalty.lambda * (penalty.exclude[static_cast<std::size_t>(j)]
                                                  ? 0.0
                                                  : penalty.weights[j]) /
                            scale_[j];
        }
        weighted_Z_ = Z_.array().colwise() * obs_weights.array();
        centered_targets_ = targets.array() - target_mean_;
        b_ = Eigen::VectorXd::Zero(p_);
        residual_ = centered_targets_;
    }

    void warm_start(const Eigen::VectorXd& beta) {
        for (Eigen::Index j = 0; j < p_; ++j) {
            b_[j] = free_[static_cast<std::size_t>(j)] ? beta[j + 1] * scale_[j] : 0.0;
        }
        residual_ = centered_targets_ - Z_ * b_;
    }

    // Returns the number of sweeps used.
    int run(const SolverOptions& options) {
        int sweeps = 0;
        std::vector<Eigen::Index> active;
        while (true) {
            double max_change = sweep_all(active);
            ++sweeps;
            if (max_change < options.tol) break;
            while (true) {
                if (sweeps >= options.max_sweeps) throw_not_converged(sweeps);
                max_change = sweep(active);
                ++sweeps;
                if (max_change < options.tol) break;
            }
            if (sweeps >= options.max_sweeps) throw_not_converged(sweeps);
        }
        if (options.polish) polish();
        return sweeps;
    }

    Eigen::VectorXd coefficients() const {
        Eigen::VectorXd beta(p_ + 1);
        double intercept = target_mean_;
        for (Eigen::Index j = 0; j < p_; ++j) {
            beta[j + 1] = b_[j] == 0.0 ? 0.0 : b_[j] / scale_[j];
            intercept -= mean_[j] * beta[j + 1];
        }
        beta[0] = intercept;
        return beta;
    }

private:
    double update(Eigen::Index j) {
        const double old = b_[j];
        const double gradient = weighted_Z_.col(j).dot(residual_) / n_ + curvature_ * old;
        const double next = soft_threshold(gradient, threshold_[j]) / curvature_;
        const double delta = next - old;
        if (delta != 0.0) {
            residual_.noalias() -= delta * Z_.col(j);
            b_[j] = next;
        }
        return std::abs(delta);
    }

    double sweep_all(std::vector<Eigen::Index>& active) {
        double max_change = 0.0;
        active.clear();
        for (Eigen::Index j = 0; j < p_; ++j) {
            if (!free_[static_cast<std::size_t>(j)]) continue;
            max_change = std::max(max_change, update(j));
            if (b_[j] != 0.0) active.push_back(j);
        }
        return max_change;
    }

    double sweep(const std::vector<Eigen::Index>& active) {
        double max_change = 0.0;
        for (Eigen::Index j : active) max_change = std::max(max_change, update(j));
        return max_change;
    }

    // Solves the stationarity equations with the signs of the current active
    // set held fixed; keeps the result only if it is itself optimal.
    void polish() {
        std::vector<Eigen::Index> active;
        for (Eigen::Index j = 0; j < p_; ++j) {
            if (b_[j] != 0.0) active.push_back(j);
        }
        if (active.empty()) return;
        const auto m = static_cast<Eigen::Index>(active.size());
        Eigen::MatrixXd gram(m, m);
        Eigen::VectorXd rhs(m);
        for (Eigen::Index a = 0; a < m; ++a) {
            const Eigen::Index ja = active[static_cast<std::size_t>(a)];
            for (Eigen::Index c = a; c < m; ++c) {
                const Eigen::Index jc = active[static_cast<std::size_t>(c)];
                gram(a, c) = weighted_Z_.col(ja).dot(Z_.col(jc)) / n_;
                gram(c, a) = gram(a, c);
            }
            const double sign = b_[ja] > 0.0 ? 1.0 : -1.0;
            rhs[a] = weighted_Z_.col(ja).dot(centered_targets_) / n_ - threshold_[ja] * sign;
        }
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
        if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return;
        const Eigen::VectorXd solution = ldlt.solve(rhs);
        if (!solution.allFinite()) return;
        if ((gram * solution - rhs).norm() > 1e-10 * (1.0 + rhs.norm())) return;
        for (Eigen::Index a = 0; a < m; ++a) {
            const Eigen::Index ja = active[static_cast<std::size_t>(a)];
            if (threshold_[ja] > 0.0 && solution[a] * b_[ja] <= 0.0) return;
        }
        Eigen::VectorXd candidate = Eigen::VectorXd::Zero(p_);
        for (Eigen::Index a = 0; a < m; ++a) {
            candidate[active[static_cast<std::size_t>(a)]] = solution[a];
        }
        const Eigen::VectorXd residual = centered_targets_ - Z_ * candidate;
        for (Eigen::Index j = 0; j < p_; ++j) {
            if (!free_[static_cast<std::size_t>(j)] || candidate[j] != 0.0) continue;
            const double gradient = weighted_Z_.col(j).dot(residual) / n_;
            if (std::abs(gradient) > threshold_[j] * (1.0 + 1e-9) + 1e-12) return;
        }
        b_ = candidate;
        residual_ = residual;
    }

    [[noreturn]] void throw_not_converged(int sweeps) const {
        throw ConvergenceError("coordinate descent did not converge in " +
                                   std::to_string(sweeps) + " sweeps",
                               coefficients(), sweeps);
    }

    double n_;
    Eigen::Index p_;
    double curvature_ = 1.0;
    double target_mean_ = 0.0;
    Eigen::VectorXd mean_, scale_, threshold_;
    std::vector<bool> free_;
    Eigen::MatrixXd Z_, weighted_Z_;
    Eigen::VectorXd centered_targets_, b_, residual_;
};

Eigen::VectorXd score(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                      const Eigen::VectorXd& targets, const Eigen::VectorXd& obs_weights,
                      const FamilySpec& family) {
    const Eigen::VectorXd eta = X * beta;
    Eigen::VectorXd r(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        r[i] = obs_weights[i] * (family_mean(family, eta[i]) - targets[i]);
    }
    return X.transpose() * r / static_cast<double>(X.rows());
}

}  // namespace

double penalized_objective(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                           const Eigen::VectorXd& targets, const Eigen::VectorXd& obs_weights,
                           const FamilySpec& family, const PenaltySpec& penalty) {
    double pen = 0.0;
    for (Eigen::Index j = 0; j < penalty.size(); ++j) {
        if (penalty.exclude[static_cast<std::size_t>(j)]) {
            if (beta[j + 1] != 0.0) return std::numeric_limits<double>::infinity();
            continue;
        }
        pen += penalty.weights[j] * std::abs(beta[j + 1]);
    }
    return glm_objective(beta, X, targets, obs_weights, family) + penalty.lambda * pen;
}

double kkt_violation(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                     const Eigen::VectorXd& targets, const Eigen::VectorXd& obs_weights,
                     const FamilySpec& family, const PenaltySpec& penalty) {
    const Eigen::VectorXd g = score(beta, X, targets, obs_weights, family);
    double worst = std::abs(g[0]);
    for (Eigen::Index j = 0; j < penalty.size(); ++j) {
        if (penalty.exclude[static_cast<std::size_t>(j)]) continue;
        const double bound = penalty.lambda * penalty.weights[j];
        const double gj = g[j + 1];
        const double v = beta[j + 1] != 0.0
                             ? std::abs(gj + bound * (beta[j + 1] > 0.0 ? 1.0 : -1.0))
                             : std::max(0.0, std::abs(gj) - bound);
        worst = std::max(worst, v);
    }
    return worst;
}

FitResult fit_weighted_lasso_gaussian(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                                      const Eigen::VectorXd& obs_weights,
                                      const PenaltySpec& penalty, const SolverOptions& options,
                                      const std::optional<Eigen::VectorXd>& initial) {
    check_shapes(X, targets, obs_weights, penalty);
    GaussianDescent descent(X, targets, obs_weights, penalty);
    if (initial) {
        if (initial->size() != X.cols()) throw DimensionError("warm start has wrong length");
        descent.warm_start(*initial);
    }
    FitResult fit;
    fit.n_iterations = descent.run(options);
    fit.beta = descent.coefficients();
    fit.active_set = nonzero_slopes(fit.beta);
    fit.lambda = penalty.lambda;
    fit.family = FamilySpec::gaussian();
    return fit;
}

FitResult fit_weighted_lasso_glm(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                                 const Eigen::VectorXd& obs_weights, const FamilySpec& family,
                                 const PenaltySpec& penalty, const SolverOptions& options,
                                 const std::optional<Eigen::VectorXd>& initial) {
    if (family.kind == Family::gaussian) {
        FitResult fit = fit_weighted_lasso_gaussian(X, targets, obs_weights, penalty, options,
                                                    initial);
        fit.family = family;
        return fit;
    }
    check_shapes(X, targets, obs_weights, penalty);

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(X.cols());
    if (initial) {
        if (initial->size() != X.cols()) throw DimensionError("warm start has wrong length");
        beta = *initial;
    } else {
        beta[0] = family_link(family, obs_weights.dot(targets) / obs_weights.sum());
    }
    double objective = penalized_objective(beta, X, targets, obs_weights, family, penalty);

    const Eigen::Index n = X.rows();
    Eigen::VectorXd working(n), weights(n);
    int sweeps = 0;
    int rising = 0;
    for (int outer = 1; outer <= options.max_outer; ++outer) {
        const Eigen::VectorXd eta = X * beta;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double v = std::max(family_variance(family, eta[i]), 1e-10);
            working[i] = eta[i] + (targets[i] - family_mean(family, eta[i])) / v;
            weights[i] = obs_weights[i] * v;
        }
        const FitResult step =
            fit_weighted_lasso_gaussian(X, working, weights, penalty, options, beta);
        sweeps += step.n_iterations;

        Eigen::VectorXd candidate = step.beta;
        double next = penalized_objective(candidate, X, targets, obs_weights, family, penalty);
        rising = next > objective ? rising + 1 : 0;
        for (int halving = 0; halving < 30 && !(next <= objective); ++halving) {
            candidate = 0.5 * (beta + candidate);
            next = penalized_objective(candidate, X, targets, obs_weights, family, penalty);
        }
        if (!(next <= objective)) {
            // Halving could not recover a descent step.
            if (rising >= 3) {
                throw ConvergenceError("IRLS diverged after step-halving", beta, outer);
            }
            break;
        }
        const double decrease = objective - next;
        beta = candidate;
        objective = next;
        if (decrease < options.objective_tol) {
            FitResult fit;
            fit.beta = beta;
            fit.active_set = nonzero_slopes(beta);
            fit.lambda = penalty.lambda;
            fit.n_iterations = sweeps;
            fit.family = family;
            return fit;
        }
        if (outer == options.max_outer) {
            throw ConvergenceError("IRLS did not converge in " + std::to_string(outer) +
                                       " outer iterations",
                                   beta, outer);
        }
    }
    FitResult fit;
    fit.beta = beta;
    fit.active_set = nonzero_slopes(beta);
    fit.lambda = penalty.lambda;
    fit.n_iterations = sweeps;
    fit.family = family;
    return fit;
}

FitResult fit_weighted_lasso_glm(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                                 const FamilySpec& family, const PenaltySpec& penalty,
                                 const SolverOptions& options) {
    return fit_weighted_lasso_glm(X, targets, Eigen::VectorXd::Ones(X.rows()), family, penalty,
                                  options);
}

double lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                  const Eigen::VectorXd& obs_weights, const PenaltySpec& penalty,
                  const FamilySpec& family) {
    check_shapes(X, targets, obs_weights, penalty);
    // Null model: intercept plus any unpenalized (zero-weight) slopes.
    PenaltySpec null = penalty;
    null.lambda = 0.0;
    bool any_penalized = false;
    for (Eigen::Index j = 0; j < penalty.size(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        if (!penalty.exclude[k] && penalty.weights[j] > 0.0) {
            null.exclude[k] = true;
            any_penalized = true;
        }
    }
    if (!any_penalized) {
        throw std::invalid_argument("lambda_max: no slope carries a finite positive weight");
    }
    const FitResult fit = fit_weighted_lasso_glm(X, targets, obs_weights, family, null);
    const Eigen::VectorXd g = score(fit.beta, X, targets, obs_weights, family);
    double result = 0.0;
    for (Eigen::Index j = 0; j < penalty.size(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        if (penalty.exclude[k] || !(penalty.weights[j] > 0.0)) continue;
        result = std::max(result, std::abs(g[j + 1]) / penalty.weights[j]);
    }
    return result;
}

double lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                  const PenaltySpec& penalty, const FamilySpec& family) {
    return lambda_max(X, targets, Eigen::VectorXd::Ones(X.rows()), penalty, family);
}

std::vector<double> lambda_grid(double lambda_max, int n_lambda, double min_ratio) {
    if (n_lambda < 2) throw std::invalid_argument("lambda_grid: need at least two points");
    if (!(min_ratio > 0.0 && min_ratio < 1.0)) {
        throw std::invalid_argument("lambda_grid: min_ratio must lie in (0, 1)");
    }
    std::vector<double> grid(static_cast<std::size_t>(n_lambda));
    const double step = std::log(min_ratio) / (n_lambda - 1);
    for (int i = 0; i < n_lambda; ++i) {
        grid[static_cast<std::size_t>(i)] = lambda_max * std::exp(step * i);
    }
    grid.front() = lambda_max;
    return grid;
}

std::vector<FitResult> fit_path(const Eigen::MatrixXd& X, const Eigen::VectorXd& targets,
                                const Eigen::VectorXd& obs_weights, const PenaltySpec& penalty,
                                const FamilySpec& family, const std::vector<double>& grid,
                                const SolverOptions& options) {
    std::vector<FitResult> path;
    path.reserve(grid.size());
    PenaltySpec spec = penalty;
    std::optional<Eigen::VectorXd> warm;
    for (double lambda : grid) {
        spec.lambda = lambda;
        path.push_back(fit_weighted_lasso_glm(X, targets, obs_weights, family, spec, options,
                                              warm));
        warm = path.back().beta;
    }
    return path;
}

std::vector<FitResult> regularization_path(const Eigen::MatrixXd& X,
                                           const Eigen::VectorXd& targets,
                                           const Eigen::VectorXd& obs_weights,
                                           const PenaltySpec& penalty, const FamilySpec& family,
                                           int n_lambda, const SolverOptions& options) {
    const double top = lambda_max(X, targets, obs_weights, penalty, family);
    return fit_path(X, targets, obs_weights, penalty, family, lambda_grid(top, n_lambda),
                    options);
}

namespace {

double log_likelihood(const Dataset& data, const Eigen::VectorXd& beta) {
    const Eigen::VectorXd eta = data.X * beta;
    double total = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        // Constant terms dropped; a(phi) = 1.
        total += data.y[i] * eta[i] - family_b(data.family, eta[i]);
    }
    return total;
}

// Newton ascent on loglik - (ridge/2) sum_{j>=1} beta_j^2.
Eigen::VectorXd newton_fit(const Dataset& data, double ridge) {
    const Eigen::Index k = data.X.cols();
    const double n = static_cast<double>(data.n());
    Eigen::VectorXd penalty_diag = Eigen::VectorXd::Constant(k, ridge);
    penalty_diag[0] = 0.0;
    auto objective = [&](const Eigen::VectorXd& b) {
        return log_likelihood(data, b) - 0.5 * b.dot(penalty_diag.cwiseProduct(b));
    };

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
    beta[0] = family_link(data.family, data.y.mean());
    double current = objective(beta);
    for (int iter = 0; iter < 200; ++iter) {
        const Eigen::VectorXd eta = data.X * beta;
        Eigen::VectorXd resid(eta.size()), v(eta.size());
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            resid[i] = data.y[i] - family_mean(data.family, eta[i]);
            v[i] = family_variance(data.family, eta[i]);
        }
        const Eigen::VectorXd gradient =
            data.X.transpose() * resid - penalty_diag.cwiseProduct(beta);
        if (gradient.norm() / n < 1e-12) return beta;

        Eigen::MatrixXd info = data.X.transpose() * (data.X.array().colwise() * v.array()).matrix();
        info.diagonal() += penalty_diag;
        const Eigen::LLT<Eigen::MatrixXd> llt(info);
        if (llt.info() != Eigen::Success || llt.rcond() < 1e-14) {
            throw NumericalError(
                "singular information matrix in maximum-likelihood fit; use a ridge pilot");
        }
        Eigen::VectorXd step = llt.solve(gradient);
        double next = objective(beta + step);
        for (int h = 0; h < 40 && !(next >= current); ++h) {
            step *= 0.5;
            next = objective(beta + step);
        }
        if (!(next >= current)) break;
        beta += step;
        current = next;
        if (data.family.kind != Family::gaussian && beta.norm() > 1e3) {
            throw NumericalError(
                "maximum-likelihood estimate diverges (|beta| > 1e3); the data look separated");
        }
        if (step.cwiseAbs().maxCoeff() < 1e-14 * (1.0 + beta.cwiseAbs().maxCoeff())) break;
    }
    return beta;
}

}  // namespace

Eigen::VectorXd mle_fit(const Dataset& dataset) {
    dataset.validate();
    if (dataset.n() <= dataset.p() + 1) {
        throw NumericalError("maximum-likelihood fit needs n > p + 1; use a ridge pilot");
    }
    if (dataset.family.kind == Family::gaussian) {
        const Eigen::MatrixXd gram = dataset.X.transpose() * dataset.X;
        const Eigen::LLT<Eigen::MatrixXd> llt(gram);
        if (llt.info() != Eigen::Success || llt.rcond() < 1e-14) {
            throw NumericalError("singular X'X in least-squares fit; use a ridge pilot");
        }
        Eigen::VectorXd beta = llt.solve(dataset.X.transpose() * dataset.y);
        // One step of iterative refinement.
        beta += llt.solve(dataset.X.transpose() * (dataset.y - dataset.X * beta));
        return beta;
    }
    Eigen::VectorXd beta = newton_fit(dataset, 0.0);
    const Eigen::VectorXd eta = dataset.X * beta;
    // The gradient vanishes numerically long before a diverging fit stops,
    // so look for fitted means pinned at the boundary instead.
    const double lowest = dataset.family.kind == Family::binomial ? -eta.cwiseAbs().maxCoeff()
                                                                  : eta.minCoeff();
    if (lowest < -30.0) {
        throw NumericalError(
            "fitted means numerically on the boundary; the data look separated");
    }
    Eigen::VectorXd resid(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        resid[i] = dataset.y[i] - family_mean(dataset.family, eta[i]);
    }
    if ((dataset.X.transpose() * resid).norm() / static_cast<double>(dataset.n()) > 1e-8) {
        throw ConvergenceError("maximum-likelihood Newton iterations stalled", beta, 200);
    }
    return beta;
}

Eigen::VectorXd ridge_fit(const Dataset& dataset, double ridge) {
    dataset.validate();
    if (!(ridge > 0.0)) throw DomainError("ridge_fit: ridge must be positive");
    if (dataset.family.kind == Family::gaussian) {
        Eigen::MatrixXd gram = dataset.X.transpose() * dataset.X;
        gram.diagonal().tail(dataset.p()).array() += ridge;
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
        if (ldlt.info() != Eigen::Success) throw NumericalError("ridge system is singular");
        return ldlt.solve(dataset.X.transpose() * dataset.y);
    }
    return newton_fit(dataset, ridge);
}

double default_pilot_ridge(const Eigen::MatrixXd& X) {
    const Eigen::Index p = std::max<Eigen::Index>(X.cols() - 1, 1);
    return 1e-3 * X.cwiseAbs2().sum() / static_cast<double>(p);
}

PilotEstimate pilot_estimate(const Dataset& dataset, bool allow_fallback) {
    if (dataset.n() > dataset.p() + 1) {
        try {
            return {mle_fit(dataset), false};
        } catch (const NumericalError&) {
            if (!allow_fallback) throw;
        }
    } else if (!allow_fallback) {
        return {mle_fit(dataset), false};
    }
    return {ridge_fit(dataset, default_pilot_ridge(dataset.X)), true};
}

PenaltySpec adaptive_weights(const Eigen::VectorXd& slopes) {
    PenaltySpec spec = PenaltySpec::uniform(slopes.size());
    for (Eigen::Index j = 0; j < slopes.size(); ++j) {
        if (slopes[j] == 0.0) {
            spec.exclude[static_cast<std::size_t>(j)] = true;
            spec.weights[j] = 0.0;
        } else {
            spec.weights[j] = 1.0 / std::abs(slopes[j]);
        }
    }
    return spec;
}

}  // namespace plasso
