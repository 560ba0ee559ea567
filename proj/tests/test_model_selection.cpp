#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <numbers>
#include <random>

#include "plasso/error.hpp"
#include "plasso/model_selection.hpp"
#include "support.hpp"

using namespace plasso;
using testing_support::design_with_intercept;
using testing_support::normal_vector;

namespace {

Dataset gaussian_data(std::uint64_t seed, int n, int p, double noise = 1.0) {
    std::mt19937_64 rng(seed);
    const Eigen::MatrixXd X = design_with_intercept(n, p, rng);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p + 1);
    beta[0] = 2.0;
    beta[1] = 1.5;
    if (p > 2) beta[3] = -1.0;
    return Dataset{X, X * beta + normal_vector(n, rng, noise), FamilySpec::gaussian(), {}};
}

FitResult gaussian_fit(const Eigen::VectorXd& beta, double sigma2) {
    FitResult fit;
    fit.beta = beta;
    fit.family = FamilySpec::gaussian();
    fit.sigma2_hat = sigma2;
    return fit;
}

MethodConfig alasso_config() {
    MethodConfig c;
    c.method = Method::alasso;
    return c;
}

}  // namespace

TEST(AssignFolds, BalancedAndDeterministic) {
    for (int n : {10, 37, 100}) {
        for (int k : {2, 3, 5, 10}) {
            const std::vector<int> folds = assign_folds(n, k, 7);
            std::vector<int> sizes(static_cast<std::size_t>(k), 0);
            for (int f : folds) {
                ASSERT_GE(f, 0);
                ASSERT_LT(f, k);
                ++sizes[static_cast<std::size_t>(f)];
            }
            const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
            EXPECT_LE(*hi - *lo, 1);
            EXPECT_EQ(folds, assign_folds(n, k, 7));
        }
    }
    EXPECT_NE(assign_folds(100, 5, 1), assign_folds(100, 5, 2));
}

TEST(AssignFolds, InvalidK) {
    EXPECT_THROW(assign_folds(10, 1, 1), std::invalid_argument);
    EXPECT_THROW(assign_folds(10, 11, 1), std::invalid_argument);
    EXPECT_NO_THROW(assign_folds(10, 10, 1));
    EXPECT_THROW(assign_folds(4, 2, 1, {0, 0, 0}), DimensionError);
}

TEST(AssignFolds, GroupsShareAFold) {
    const std::vector<int> groups{5, 5, 9, 1, 9, 1, 5, 2};
    const std::vector<int> folds = assign_folds(8, 3, 4, groups);
    std::map<int, int> fold_of;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        auto [it, inserted] = fold_of.try_emplace(groups[i], folds[i]);
        EXPECT_EQ(it->second, folds[i]);
    }
    EXPECT_THROW(assign_folds(8, 5, 4, groups), std::invalid_argument);
}

TEST(Pps, Examples) {
    FitResult logistic;
    logistic.beta = Eigen::VectorXd::Zero(2);
    logistic.family = FamilySpec::binomial();
    Eigen::MatrixXd X(4, 2);
    X << 1, 0.3, 1, -1, 1, 2, 1, 0;
    const Dataset d{X, Eigen::Vector4d(0, 1, 1, 0), FamilySpec::binomial(), {}};
    EXPECT_NEAR(pps(logistic, d), std::log(2.0), 1e-15);
    EXPECT_NEAR(pps_constant_free(logistic, d), std::log(2.0), 1e-15);

    Eigen::MatrixXd Xg(1, 1);
    Xg << 1;
    const Dataset g{Xg, Eigen::VectorXd::Constant(1, 0.3), FamilySpec::gaussian(), {}};
    const FitResult fit = gaussian_fit(Eigen::VectorXd::Constant(1, 0.3), 1.0);
    EXPECT_NEAR(pps(fit, g), 0.9189385332046727, 1e-12);
    EXPECT_NEAR(pps_constant_free(fit, g), 0.0, 1e-12);
}

TEST(Pps, Errors) {
    const Dataset d = gaussian_data(1, 5, 2);
    FitResult no_sigma = gaussian_fit(Eigen::VectorXd::Zero(3), 1.0);
    no_sigma.sigma2_hat.reset();
    EXPECT_THROW(pps(no_sigma, d), std::invalid_argument);
    EXPECT_THROW(pps(gaussian_fit(Eigen::VectorXd::Zero(2), 1.0), d), DimensionError);
}

TEST(Pps, WplassoUsesPointSpecificVariance) {
    Eigen::MatrixXd X(2, 2);
    X << 1, 0, 1, 2;
    const Dataset d{X, Eigen::Vector2d(0.0, 1.0), FamilySpec::gaussian(), {}};
    FitResult fit = gaussian_fit(Eigen::Vector2d(0.0, 0.5), 2.0);
    fit.variance_shape = Eigen::Matrix2d::Identity() * 0.25;
    // Variances 2 * (1 + 0.25) and 2 * (1 + 0.25 * 5).
    const double v1 = 2.5, v2 = 4.5;
    const double expected = 0.5 * (0.5 * std::log(2 * std::numbers::pi * v1) +
                                   0.5 * std::log(2 * std::numbers::pi * v2));
    EXPECT_NEAR(pps(fit, d), expected, 1e-13);
}

TEST(Pps, InvariantToRowPermutation) {
    const Dataset d = gaussian_data(2, 30, 3);
    const FitResult fit = gaussian_fit(Eigen::Vector4d(1.8, 1.4, 0.1, -0.9), 1.3);
    std::vector<int> order(30);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(3);
    std::shuffle(order.begin(), order.end(), rng);
    EXPECT_NEAR(pps(fit, d), pps(fit, d.rows(order)), 1e-13);
}

TEST(Pps, SampleMeanMinimizesOverConstants) {
    std::mt19937_64 rng(4);
    const Eigen::VectorXd y = normal_vector(50, rng, 2.0).array() + 3.0;
    const Dataset d{Eigen::MatrixXd::Ones(50, 1), y, FamilySpec::gaussian(), {}};
    const double best = pps(gaussian_fit(Eigen::VectorXd::Constant(1, y.mean()), 1.0), d);
    for (double c = y.mean() - 2; c <= y.mean() + 2; c += 0.05) {
        EXPECT_GE(pps(gaussian_fit(Eigen::VectorXd::Constant(1, c), 1.0), d), best - 1e-14);
    }
}

TEST(KfoldCv, LeaveOneOut) {
    const Dataset d = gaussian_data(5, 10, 2);
    CvOptions opt;
    opt.k = 10;
    opt.n_lambda = 10;
    const CVResult cv = kfold_cv(d, alasso_config(), opt);
    EXPECT_EQ(cv.fold_coefficients.size(), 10u);
    EXPECT_EQ(cv.cv_scores.size(), 10u);
    for (double s : cv.cv_scores) EXPECT_TRUE(std::isfinite(s));
}

TEST(KfoldCv, DeterministicForSeed) {
    const Dataset d = gaussian_data(6, 60, 4);
    CvOptions opt;
    opt.n_lambda = 20;
    for (Method m : {Method::alasso, Method::plasso, Method::wplasso}) {
        MethodConfig c;
        c.method = m;
        const CVResult a = kfold_cv(d, c, opt);
        const CVResult b = kfold_cv(d, c, opt);
        EXPECT_EQ(a.cv_scores, b.cv_scores);
        EXPECT_EQ(a.lambda_star, b.lambda_star);
        EXPECT_EQ(a.fold_assignments, b.fold_assignments);
    }
}

TEST(KfoldCv, BestIndexIsArgmin) {
    const Dataset d = gaussian_data(7, 80, 4);
    CvOptions opt;
    opt.n_lambda = 30;
    const CVResult cv = kfold_cv(d, alasso_config(), opt);
    const auto it = std::min_element(cv.cv_scores.begin(), cv.cv_scores.end());
    EXPECT_EQ(cv.best_index, it - cv.cv_scores.begin());
    EXPECT_EQ(cv.lambda_star, cv.lambda_grid[static_cast<std::size_t>(cv.best_index)]);
}

TEST(KfoldCv, TiesResolveToFirstIndex) {
    const Dataset d = gaussian_data(8, 40, 3);
    const double lmax = default_lambda_grid(d, alasso_config(), 2).front();
    CvOptions opt;
    opt.lambda_grid = {4 * lmax, 3 * lmax, 2 * lmax};
    const CVResult cv = kfold_cv(d, alasso_config(), opt);
    EXPECT_EQ(cv.cv_scores[0], cv.cv_scores[2]);
    EXPECT_EQ(cv.best_index, 0);
}

TEST(KfoldCv, NoiseResponseSelectsLargeLambda) {
    std::mt19937_64 rng(9);
    const Eigen::MatrixXd X = design_with_intercept(100, 5, rng);
    const Dataset d{X, normal_vector(100, rng), FamilySpec::gaussian(), {}};
    CvOptions opt;
    opt.n_lambda = 40;
    const CVResult cv = kfold_cv(d, alasso_config(), opt);
    EXPECT_LT(cv.best_index, 10);
}

TEST(KfoldCv, DuplicatedRowsWithGroupsGiveSameLambda) {
    const Dataset d = gaussian_data(10, 40, 3);
    std::vector<int> rows(80), groups(80);
    for (int i = 0; i < 80; ++i) rows[static_cast<std::size_t>(i)] = groups[static_cast<std::size_t>(i)] = i % 40;
    const Dataset doubled = d.rows(rows);
    CvOptions opt;
    opt.n_lambda = 25;
    const CVResult single = kfold_cv(d, alasso_config(), opt);
    opt.groups = groups;
    const CVResult twice = kfold_cv(doubled, alasso_config(), opt);
    EXPECT_EQ(single.best_index, twice.best_index);
    for (std::size_t l = 0; l < single.cv_scores.size(); ++l) {
        EXPECT_NEAR(single.cv_scores[l], twice.cv_scores[l], 1e-6 * std::abs(single.cv_scores[l]));
    }
}

TEST(KfoldCv, HeldOutResponsesDoNotLeakIntoFits) {
    const Dataset d = gaussian_data(11, 50, 3);
    for (Method m : {Method::alasso, Method::plasso}) {
        MethodConfig c;
        c.method = m;
        CvOptions opt;
        opt.lambda_grid = lambda_grid(default_lambda_grid(d, c, 2).front(), 15, 1e-3);
        const CVResult clean = kfold_cv(d, c, opt);
        Dataset corrupted = d;
        for (std::size_t i = 0; i < clean.fold_assignments.size(); ++i) {
            if (clean.fold_assignments[i] == 0) corrupted.y[static_cast<Eigen::Index>(i)] += 25.0;
        }
        const CVResult dirty = kfold_cv(corrupted, c, opt);
        EXPECT_EQ(clean.fold_coefficients[0], dirty.fold_coefficients[0]);
        EXPECT_NE(clean.cv_scores, dirty.cv_scores);
    }
}

TEST(KfoldCv, FoldTooSmallIsDataError) {
    const Dataset d = gaussian_data(12, 8, 5);
    MethodConfig c;
    c.method = Method::plasso;
    c.prior = PriorKind::gprior;
    CvOptions opt;
    opt.k = 2;
    opt.lambda_grid = {1.0, 0.1};
    EXPECT_THROW(kfold_cv(d, c, opt), DataError);
}

TEST(PrepareProblem, WplassoRejectsBinomial) {
    std::mt19937_64 rng(13);
    const Eigen::MatrixXd X = design_with_intercept(30, 2, rng);
    const Dataset d{X, testing_support::bernoulli_response(X.col(1), rng), FamilySpec::binomial(), {}};
    MethodConfig c;
    c.method = Method::wplasso;
    c.prior = PriorKind::gelman;
    EXPECT_THROW(prepare_problem(d, c), std::invalid_argument);
    c.method = Method::plasso;
    c.prior = PriorKind::raftery;
    EXPECT_THROW(prepare_problem(d, c), std::invalid_argument);
    c.prior = PriorKind::gelman;
    EXPECT_NO_THROW(prepare_problem(d, c));
}

TEST(PrepareProblem, FuturePointsDefineTheFittedRows) {
    const Dataset d = gaussian_data(14, 40, 3);
    std::mt19937_64 rng(15);
    MethodConfig c;
    c.method = Method::plasso;
    c.future_points = design_with_intercept(12, 3, rng);
    const PreparedProblem pb = prepare_problem(d, c);
    EXPECT_EQ(pb.design.rows(), 12);
    EXPECT_EQ(pb.targets.size(), 12);
    c.future_points = design_with_intercept(12, 2, rng);
    EXPECT_THROW(prepare_problem(d, c), DimensionError);
}

TEST(Strings, RoundTrip) {
    for (PriorKind p : {PriorKind::raftery, PriorKind::gprior, PriorKind::noninformative,
                        PriorKind::gelman, PriorKind::chen_ibrahim}) {
        EXPECT_EQ(prior_from_string(to_string(p)), p);
    }
    EXPECT_EQ(glm_targets_from_string("mcmc"), GlmTargets::mcmc);
    EXPECT_THROW(prior_from_string("laplace"), std::invalid_argument);
}
