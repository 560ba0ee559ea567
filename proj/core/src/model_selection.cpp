#include "plasso/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "plasso/error.hpp"

namespace plasso {

std::string_view to_string(PriorKind prior) {
    switch (prior) {
        case PriorKind::raftery: return "raftery";
        case PriorKind::gprior: return "gprior";
        case PriorKind::noninformative: return "noninformative";
        case PriorKind::gelman: return "gelman";
        case PriorKind::chen_ibrahim: return "chen_ibrahim";
    }
    return "unknown";
}

PriorKind prior_from_string(std::string_view name) {
    if (name == "raftery") return PriorKind::raftery;
    if (name == "gprior") return PriorKind::gprior;
    if (name == "noninformative") return PriorKind::noninformative;
    if (name == "gelman") return PriorKind::gelman;
    if (name == "chen_ibrahim") return PriorKind::chen_ibrahim;
    throw std::invalid_argument("unknown prior '" + std::string(name) + "'");
}

std::string_view to_string(GlmTargets targets) {
    return targets == GlmTargets::plugin ? "plugin" : "mcmc";
}

GlmTargets glm_targets_from_string(std::string_view name) {
    if (name == "plugin") return GlmTargets::plugin;
    if (name == "mcmc") return GlmTargets::mcmc;
    throw std::invalid_argument("unknown GLM target estimator '" + std::string(name) + "'");
}

namespace {

NIGPrior linear_prior(const Dataset& train, const MethodConfig& config) {
    switch (config.prior) {
        case PriorKind::raftery: return raftery_prior(train.X, train.y);
        case PriorKind::gprior: return gprior(train.X, config.gprior_c);
        case PriorKind::noninformative:
            return noninformative_prior(train.X.cols(), config.noninformative_scale);
        default: break;
    }
    throw std::invalid_argument("prior '" + std::string(to_string(config.prior)) +
                                "' does not apply to gaussian data");
}

Eigen::VectorXd glm_predictive_means(const Dataset& train, const MethodConfig& config,
                                     const Eigen::MatrixXd& X_future) {
    if (config.prior == PriorKind::gelman) {
        if (config.glm_targets == GlmTargets::plugin) {
            return predictive_means_plugin(train, config.gelman, X_future);
        }
        const McmcSamples samples = sample_gelman_posterior(train, config.gelman, config.mcmc);
        return predictive_means_mcmc(samples.draws, X_future, train.family).means;
    }
    if (config.prior == PriorKind::chen_ibrahim) {
        const ChenIbrahimPrior prior = default_chen_ibrahim_prior(train);
        if (config.glm_targets == GlmTargets::plugin) {
            const ChenIbrahimPrior post = chen_ibrahim_posterior(prior, train.y);
            const FitResult mode = fit_weighted_lasso_glm(train.X, post.alpha0, train.family,
                                                          PenaltySpec::uniform(train.p(), 0.0));
            Eigen::VectorXd mu = X_future * mode.beta;
            for (Eigen::Index i = 0; i < mu.size(); ++i) mu[i] = family_mean(train.family, mu[i]);
            return mu;
        }
        const McmcSamples samples = sample_chen_ibrahim_posterior(train, prior, config.mcmc);
        return predictive_means_mcmc(samples.draws, X_future, train.family).means;
    }
    throw std::invalid_argument("prior '" + std::string(to_string(config.prior)) +
                                "' does not apply to " + std::string(to_string(train.family.kind)) +
                                " data");
}

}  // namespace

PreparedProblem prepare_problem(const Dataset& train, const MethodConfig& config) {
    train.validate();
    const bool gaussian = train.family.kind == Family::gaussian;
    if (!gaussian && config.method == Method::wplasso) {
        throw std::invalid_argument("wplasso is defined for gaussian data only");
    }
    const Eigen::MatrixXd& X_future = config.future_points ? *config.future_points : train.X;
    if (X_future.cols() != train.X.cols()) {
        throw DimensionError("future points have " + std::to_string(X_future.cols()) +
                             " columns, expected " + std::to_string(train.X.cols()));
    }

    PreparedProblem pb;
    pb.method = config.method;
    pb.family = train.family;
    pb.train_X = train.X;
    pb.train_y = train.y;
    pb.solver = config.solver;

    if (config.method == Method::alasso) {
        pb.design = train.X;
        pb.targets = train.y;
        pb.obs_weights = Eigen::VectorXd::Ones(train.n());
    } else if (gaussian) {
        pb.posterior = conjugate_posterior(train.X, train.y, linear_prior(train, config));
        pb.linear_targets =
            make_targets(X_future, *pb.posterior,
                         config.method == Method::wplasso ? TargetMode::wplasso : TargetMode::plasso);
        pb.design = X_future;
        pb.targets = pb.linear_targets->means;
        pb.obs_weights = pb.linear_targets->obs_weights;
    } else {
        pb.design = X_future;
        pb.targets = glm_predictive_means(train, config, X_future);
        pb.obs_weights = Eigen::VectorXd::Ones(X_future.rows());
    }

    Eigen::VectorXd pilot;
    if (config.pilot_posterior_mode) {
        if (gaussian) {
            pilot = pb.posterior ? pb.posterior->beta_tilde
                                 : conjugate_posterior(train.X, train.y,
                                                       linear_prior(train, config))
                                       .beta_tilde;
        } else {
            pilot = gelman_posterior_mode(train, config.gelman);
        }
    } else {
        const PilotEstimate est = pilot_estimate(train);
        pilot = est.beta;
        pb.pilot_regularized = est.regularized;
    }
    pb.penalty = adaptive_weights(pilot.tail(train.p()));
    return pb;
}

double lambda_max(const PreparedProblem& problem) {
    bool any = false;
    for (Eigen::Index j = 0; j < problem.penalty.size(); ++j) {
        any = any || (!problem.penalty.exclude[static_cast<std::size_t>(j)] &&
                      problem.penalty.weights[j] > 0.0);
    }
    if (!any) return 0.0;
    return lambda_max(problem.design, problem.targets, problem.obs_weights, problem.penalty,
                      problem.family);
}

FitResult fit_prepared(const PreparedProblem& problem, double lambda,
                       const std::optional<Eigen::VectorXd>& initial) {
    PenaltySpec penalty = problem.penalty;
    penalty.lambda = lambda;
    FitResult fit = fit_weighted_lasso_glm(problem.design, problem.targets, problem.obs_weights,
                                           problem.family, penalty, problem.solver, initial);
    fit.method = problem.method;
    fit.family = problem.family;
    fit.pilot_regularized = problem.pilot_regularized;
    if (problem.family.kind == Family::gaussian) {
        double sigma2 = 0.0;
        switch (problem.method) {
            case Method::alasso:
                sigma2 = (problem.train_y - problem.train_X * fit.beta).squaredNorm() /
                         static_cast<double>(problem.train_y.size());
                break;
            case Method::plasso:
                sigma2 = sigma2_plasso(*problem.linear_targets, problem.design, fit.beta);
                break;
            case Method::wplasso:
                sigma2 = sigma2_wplasso(*problem.linear_targets, problem.design, fit.beta);
                fit.variance_shape = problem.posterior->V_hat;
                break;
        }
        fit.sigma2_hat = std::max(sigma2, std::numeric_limits<double>::min());
    }
    return fit;
}

std::vector<FitResult> fit_prepared_path(const PreparedProblem& problem,
                                         const std::vector<double>& grid) {
    std::vector<FitResult> path;
    path.reserve(grid.size());
    std::optional<Eigen::VectorXd> warm;
    for (double lambda : grid) {
        path.push_back(fit_prepared(problem, lambda, warm));
        warm = path.back().beta;
    }
    return path;
}

FitResult fit_method(const Dataset& train, const MethodConfig& config, double lambda) {
    return fit_prepared(prepare_problem(train, config), lambda);
}

double fit_log_density(const FitResult& fit, const Eigen::VectorXd& x, double y) {
    const double eta = x.dot(fit.beta);
    if (fit.family.kind != Family::gaussian) return log_density(fit.family, y, eta, 1.0);
    if (!fit.sigma2_hat) throw std::invalid_argument("gaussian fit carries no sigma2 estimate");
    double variance = *fit.sigma2_hat;
    if (fit.variance_shape) variance *= 1.0 + x.dot(*fit.variance_shape * x);
    return log_density(fit.family, y, eta, variance);
}

double pps(const FitResult& fit, const Dataset& prediction_set) {
    if (fit.family.kind != prediction_set.family.kind) {
        throw std::invalid_argument("pps: fit and prediction set families differ");
    }
    if (prediction_set.X.cols() != fit.beta.size()) {
        throw DimensionError("pps: prediction set has wrong number of columns");
    }
    if (prediction_set.n() == 0) throw DimensionError("pps: empty prediction set");
    double total = 0.0;
    for (Eigen::Index i = 0; i < prediction_set.n(); ++i) {
        total -= fit_log_density(fit, prediction_set.X.row(i).transpose(), prediction_set.y[i]);
    }
    return total / static_cast<double>(prediction_set.n());
}

double pps_constant_free(const FitResult& fit, const Dataset& prediction_set) {
    const double raw = pps(fit, prediction_set);
    if (fit.family.kind != Family::gaussian) return raw;
    return raw - 0.5 * std::log(2.0 * std::numbers::pi);
}

std::vector<int> assign_folds(Eigen::Index n, int k, std::uint64_t seed,
                              const std::vector<int>& groups) {
    if (k < 2) throw std::invalid_argument("cross-validation needs k >= 2");
    if (!groups.empty() && static_cast<Eigen::Index>(groups.size()) != n) {
        throw DimensionError("group vector length does not match the number of rows");
    }
    // Units are rows, or groups in order of first appearance.
    std::vector<int> unit_of(static_cast<std::size_t>(n));
    int units = 0;
    if (groups.empty()) {
        std::iota(unit_of.begin(), unit_of.end(), 0);
        units = static_cast<int>(n);
    } else {
        std::map<int, int> index;
        for (std::size_t i = 0; i < groups.size(); ++i) {
            auto [it, inserted] = index.try_emplace(groups[i], units);
            if (inserted) ++units;
            unit_of[i] = it->second;
        }
    }
    if (k > units) {
        throw std::invalid_argument("cross-validation needs k <= number of rows (or groups)");
    }
    std::vector<int> order(static_cast<std::size_t>(units));
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 engine(seed);
    std::shuffle(order.begin(), order.end(), engine);
    std::vector<int> fold_of_unit(static_cast<std::size_t>(units));
    for (std::size_t r = 0; r < order.size(); ++r) {
        fold_of_unit[static_cast<std::size_t>(order[r])] = static_cast<int>(r % static_cast<std::size_t>(k));
    }
    std::vector<int> folds(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < folds.size(); ++i) folds[i] = fold_of_unit[static_cast<std::size_t>(unit_of[i])];
    return folds;
}

std::vector<double> default_lambda_grid(const Dataset& train, const MethodConfig& config,
                                        int n_lambda, double min_ratio) {
    const PreparedProblem problem = prepare_problem(train, config);
    if (min_ratio <= 0.0) min_ratio = train.n() > train.p() + 1 ? 1e-4 : 1e-2;
    return lambda_grid(lambda_max(problem), n_lambda, min_ratio);
}

CVResult kfold_cv(const Dataset& dataset, const MethodConfig& config, const CvOptions& options) {
    dataset.validate();
    CVResult result;
    result.fold_assignments = assign_folds(dataset.n(), options.k, options.seed, options.groups);
    result.lambda_grid = options.lambda_grid.empty()
                             ? default_lambda_grid(dataset, config, options.n_lambda,
                                                   options.lambda_min_ratio)
                             : options.lambda_grid;
    const auto n_lambda = result.lambda_grid.size();
    std::vector<double> totals(n_lambda, 0.0);

    for (int fold = 0; fold < options.k; ++fold) {
        std::vector<int> train_rows, test_rows;
        for (std::size_t i = 0; i < result.fold_assignments.size(); ++i) {
            (result.fold_assignments[i] == fold ? test_rows : train_rows)
                .push_back(static_cast<int>(i));
        }
        const Dataset train = dataset.rows(train_rows);
        const Dataset test = dataset.rows(test_rows);
        PreparedProblem problem;
        try {
            problem = prepare_problem(train, config);
        } catch (const NumericalError& e) {
            throw DataError("fold " + std::to_string(fold) + " is too small to fit the pilot (" +
                            e.what() + "); use a smaller k");
        }
        const std::vector<FitResult> path = fit_prepared_path(problem, result.lambda_grid);
        Eigen::MatrixXd coefs(dataset.X.cols(), static_cast<Eigen::Index>(n_lambda));
        for (std::size_t l = 0; l < n_lambda; ++l) {
            coefs.col(static_cast<Eigen::Index>(l)) = path[l].beta;
            for (Eigen::Index i = 0; i < test.n(); ++i) {
                totals[l] -= fit_log_density(path[l], test.X.row(i).transpose(), test.y[i]);
            }
        }
        result.fold_coefficients.push_back(std::move(coefs));
    }

    result.cv_scores.resize(n_lambda);
    int best = 0;
    for (std::size_t l = 0; l < n_lambda; ++l) {
        const double score = totals[l] / static_cast<double>(dataset.n());
        result.cv_scores[l] = std::isnan(score) ? std::numeric_limits<double>::infinity() : score;
        if (result.cv_scores[l] < result.cv_scores[static_cast<std::size_t>(best)]) {
            best = static_cast<int>(l);
        }
    }
    result.best_index = best;
    result.lambda_star = result.lambda_grid[static_cast<std::size_t>(best)];
    return result;
}

}  // namespace plasso
