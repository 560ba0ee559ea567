#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "plasso/error.hpp"
#include "plasso/lasso.hpp"
#include "support.hpp"

using namespace plasso;
using testing_support::design_with_intercept;
using testing_support::normal_vector;

namespace {

struct Instance {
    Eigen::MatrixXd X;
    Eigen::VectorXd targets;
    Eigen::VectorXd weights;
    FamilySpec family;
};

Instance random_instance(std::mt19937_64& rng, Family kind, Eigen::Index n, Eigen::Index p,
                         bool weighted) {
    Instance inst;
    inst.X = design_with_intercept(n, p, rng);
    const Eigen::VectorXd beta = normal_vector(p + 1, rng, 0.7);
    const Eigen::VectorXd eta = inst.X * beta;
    std::uniform_real_distribution<double> u(0.2, 2.0);
    inst.weights = Eigen::VectorXd::Ones(n);
    if (weighted)
        for (Eigen::Index i = 0; i < n; ++i) inst.weights[i] = u(rng);
    switch (kind) {
        case Family::gaussian:
            inst.family = FamilySpec::gaussian();
            inst.targets = eta + normal_vector(n, rng);
            break;
        case Family::binomial:
            inst.family = FamilySpec::binomial();
            inst.targets = testing_support::bernoulli_response(eta, rng);
            break;
        case Family::poisson: {
            inst.family = FamilySpec::poisson();
            inst.targets.resize(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                std::poisson_distribution<int> pois(std::exp(std::clamp(eta[i], -3.0, 2.5)));
                inst.targets[i] = pois(rng);
            }
            break;
        }
    }
    return inst;
}

PenaltySpec random_penalty(std::mt19937_64& rng, Eigen::Index p, double lambda) {
    std::uniform_real_distribution<double> u(0.3, 3.0);
    PenaltySpec pen = PenaltySpec::uniform(p, lambda);
    for (Eigen::Index j = 0; j < p; ++j) pen.weights[j] = u(rng);
    return pen;
}

}  // namespace

TEST(SoftThreshold, Examples) {
    EXPECT_DOUBLE_EQ(soft_threshold(3.0, 1.0), 2.0);
    EXPECT_DOUBLE_EQ(soft_threshold(-0.5, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(soft_threshold(-2.5, 0.5), -2.0);
    EXPECT_DOUBLE_EQ(soft_threshold(1.0, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(soft_threshold(-1.0, 1.0), 0.0);
}

TEST(PenaltySpec, Validation) {
    PenaltySpec pen = PenaltySpec::uniform(3, 1.0);
    EXPECT_NO_THROW(pen.validate());
    pen.lambda = -1.0;
    EXPECT_THROW(pen.validate(), DomainError);
    pen.lambda = 1.0;
    pen.weights[1] = -0.5;
    EXPECT_THROW(pen.validate(), DomainError);
}

TEST(GaussianSolver, LambdaZeroSolvesNormalEquations) {
    std::mt19937_64 rng(1);
    const Instance inst = random_instance(rng, Family::gaussian, 60, 5, true);
    const FitResult fit = fit_weighted_lasso_gaussian(inst.X, inst.targets, inst.weights,
                                                      PenaltySpec::uniform(5, 0.0));
    const Eigen::VectorXd residual =
        inst.X.transpose() * inst.weights.asDiagonal() * (inst.targets - inst.X * fit.beta);
    EXPECT_LT(residual.lpNorm<Eigen::Infinity>(), 1e-8);
}

TEST(GaussianSolver, AboveLambdaMaxGivesWeightedMean) {
    std::mt19937_64 rng(2);
    const Instance inst = random_instance(rng, Family::gaussian, 40, 4, true);
    const PenaltySpec base = random_penalty(rng, 4, 0.0);
    PenaltySpec pen = base;
    pen.lambda = lambda_max(inst.X, inst.targets, inst.weights, base, inst.family);
    const FitResult fit = fit_weighted_lasso_gaussian(inst.X, inst.targets, inst.weights, pen);
    EXPECT_TRUE(fit.active_set.empty());
    EXPECT_TRUE(fit.beta.tail(4).isZero(0.0));
    EXPECT_NEAR(fit.beta[0], inst.weights.dot(inst.targets) / inst.weights.sum(), 1e-12);
}

TEST(GaussianSolver, OrthonormalDesignIsSoftThresholdedOls) {
    std::mt19937_64 rng(3);
    const int n = 50;
    Eigen::MatrixXd Z = testing_support::normal_matrix(n, 2, rng);
    Z.rowwise() -= Z.colwise().mean();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, 2);
    Eigen::MatrixXd X(n, 3);
    X.col(0).setOnes();
    X.rightCols(2) = Q * std::sqrt(double(n));  // x_j'x_k / n = delta_jk, centred
    const Eigen::VectorXd t = X * Eigen::Vector3d(1.0, 0.8, -0.3) + normal_vector(n, rng, 0.5);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

    for (double lambda : {0.0, 0.1, 0.35, 0.9}) {
        const FitResult fit =
            fit_weighted_lasso_gaussian(X, t, ones, PenaltySpec::uniform(2, lambda));
        const Eigen::VectorXd ols = X.colPivHouseholderQr().solve(t);
        EXPECT_NEAR(fit.beta[0], ols[0], 1e-10);
        for (int j = 1; j <= 2; ++j) EXPECT_NEAR(fit.beta[j], soft_threshold(ols[j], lambda), 1e-10);

        auto objective = [&](const Eigen::VectorXd& b2) {
            Eigen::Vector3d b(ols[0], b2[0], b2[1]);
            return (t - X * b).squaredNorm() / (2.0 * n) + lambda * b.tail(2).lpNorm<1>();
        };
        const auto grid = testing_support::grid_search(objective, Eigen::Vector2d::Zero(), 5.0, 1e-11);
        EXPECT_NEAR(fit.beta[1], grid.point[0], 1e-8);
        EXPECT_NEAR(fit.beta[2], grid.point[1], 1e-8);
    }
}

TEST(GaussianSolver, ExcludedSlopesStayZero) {
    std::mt19937_64 rng(4);
    const Instance inst = random_instance(rng, Family::gaussian, 50, 4, false);
    PenaltySpec pen = PenaltySpec::uniform(4, 0.01);
    pen.exclude[1] = true;
    const FitResult fit = fit_weighted_lasso_gaussian(inst.X, inst.targets, inst.weights, pen);
    EXPECT_EQ(fit.beta[2], 0.0);
    EXPECT_EQ(std::count(fit.active_set.begin(), fit.active_set.end(), 2), 0);
}

TEST(GaussianSolver, ReportsNonConvergence) {
    std::mt19937_64 rng(5);
    Eigen::MatrixXd X = design_with_intercept(40, 3, rng);
    X.col(2) = X.col(1) + 1e-3 * normal_vector(40, rng);  // nearly collinear
    const Eigen::VectorXd t = X.col(1) + normal_vector(40, rng);
    SolverOptions opts;
    opts.max_sweeps = 1;
    opts.tol = 1e-14;
    try {
        fit_weighted_lasso_gaussian(X, t, Eigen::VectorXd::Ones(40), PenaltySpec::uniform(3, 1e-4), opts);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.last_iterate().size(), 4);
        EXPECT_GE(e.iterations(), 1);
    }
}

TEST(GaussianSolver, RejectsBadInput) {
    const Eigen::MatrixXd X = Eigen::MatrixXd::Ones(5, 2);
    const Eigen::VectorXd t = Eigen::VectorXd::Zero(5);
    EXPECT_THROW(fit_weighted_lasso_gaussian(X, t, Eigen::VectorXd::Zero(5), PenaltySpec::uniform(1, 0.1)),
                 DomainError);
    EXPECT_THROW(fit_weighted_lasso_gaussian(X, t, -Eigen::VectorXd::Ones(5), PenaltySpec::uniform(1, 0.1)),
                 DomainError);
    EXPECT_THROW(fit_weighted_lasso_gaussian(X, t, Eigen::VectorXd::Ones(5), PenaltySpec::uniform(2, 0.1)),
                 DimensionError);
}

TEST(GlmSolver, GaussianFamilyMatchesGaussianSolver) {
    std::mt19937_64 rng(6);
    const Instance inst = random_instance(rng, Family::gaussian, 50, 5, true);
    const PenaltySpec pen = random_penalty(rng, 5, 0.05);
    const FitResult a = fit_weighted_lasso_gaussian(inst.X, inst.targets, inst.weights, pen);
    const FitResult b = fit_weighted_lasso_glm(inst.X, inst.targets, inst.weights, inst.family, pen);
    EXPECT_LT((a.beta - b.beta).lpNorm<Eigen::Infinity>(), 1e-10);
}

TEST(GlmSolver, BinomialInterceptOnly) {
    const Eigen::MatrixXd X = Eigen::MatrixXd::Ones(12, 1);
    const Eigen::VectorXd t = Eigen::VectorXd::Constant(12, 0.25);
    const FitResult fit = fit_weighted_lasso_glm(X, t, FamilySpec::binomial(), PenaltySpec::uniform(0, 0.0));
    EXPECT_NEAR(fit.beta[0], -1.0986122886681098, 1e-9);
}

TEST(GlmSolver, BinomialMatchesGridSearch) {
    std::mt19937_64 rng(20);
    const Instance inst = random_instance(rng, Family::binomial, 20, 2, false);
    const PenaltySpec pen = PenaltySpec::uniform(2, 0.1);
    const FitResult fit = fit_weighted_lasso_glm(inst.X, inst.targets, inst.family, pen);
    auto f = [&](const Eigen::VectorXd& b) {
        return penalized_objective(b, inst.X, inst.targets, inst.weights, inst.family, pen);
    };
    const auto grid = testing_support::grid_search(f, Eigen::Vector3d::Zero(), 5.0);
    const double mine = f(fit.beta);
    EXPECT_NEAR(mine, grid.value, 1e-6);
    EXPECT_LE(mine, grid.value + 1e-12);
}

TEST(GlmSolver, FractionalTargetsAccepted) {
    std::mt19937_64 rng(8);
    const Eigen::MatrixXd X = design_with_intercept(30, 2, rng);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    Eigen::VectorXd t(30);
    for (auto& v : t) v = u(rng);
    const FitResult fit = fit_weighted_lasso_glm(X, t, FamilySpec::binomial(), PenaltySpec::uniform(2, 0.01));
    EXPECT_LT(kkt_violation(fit.beta, X, t, Eigen::VectorXd::Ones(30), FamilySpec::binomial(),
                            PenaltySpec::uniform(2, 0.01)),
              1e-6);
}

TEST(LambdaMax, ConstantTargetsGiveZero) {
    std::mt19937_64 rng(9);
    const Eigen::MatrixXd X = design_with_intercept(20, 3, rng);
    EXPECT_NEAR(lambda_max(X, Eigen::VectorXd::Constant(20, 4.0), PenaltySpec::uniform(3), FamilySpec::gaussian()),
                0.0, 1e-12);
    EXPECT_NEAR(lambda_max(X, Eigen::VectorXd::Constant(20, 0.3), PenaltySpec::uniform(3), FamilySpec::binomial()),
                0.0, 1e-9);
}

TEST(LambdaMax, CentredGaussianFormula) {
    std::mt19937_64 rng(10);
    Eigen::MatrixXd X = design_with_intercept(30, 4, rng);
    for (int j = 1; j <= 4; ++j) X.col(j).array() -= X.col(j).mean();
    const Eigen::VectorXd t = normal_vector(30, rng);
    const double expected = (X.rightCols(4).transpose() * t).cwiseAbs().maxCoeff() / 30.0;
    EXPECT_NEAR(lambda_max(X, t, PenaltySpec::uniform(4), FamilySpec::gaussian()), expected, 1e-12);
}

TEST(LambdaMax, BracketsTheFirstActivation) {
    std::mt19937_64 rng(11);
    for (Family kind : {Family::gaussian, Family::binomial, Family::poisson}) {
        for (int rep = 0; rep < 5; ++rep) {
            const Instance inst = random_instance(rng, kind, 60, 4, rep % 2 == 1);
            PenaltySpec pen = random_penalty(rng, 4, 0.0);
            const double lmax = lambda_max(inst.X, inst.targets, inst.weights, pen, inst.family);
            pen.lambda = 1.001 * lmax;
            EXPECT_TRUE(fit_weighted_lasso_glm(inst.X, inst.targets, inst.weights, inst.family, pen)
                            .active_set.empty());
            pen.lambda = 0.9 * lmax;
            EXPECT_FALSE(fit_weighted_lasso_glm(inst.X, inst.targets, inst.weights, inst.family, pen)
                             .active_set.empty());
        }
    }
}

TEST(LambdaMax, AllExcludedIsAnError) {
    PenaltySpec pen = PenaltySpec::uniform(2);
    pen.exclude = {true, true};
    EXPECT_THROW(lambda_max(Eigen::MatrixXd::Ones(4, 3), Eigen::VectorXd::Zero(4), pen, FamilySpec::gaussian()),
                 std::invalid_argument);
}

TEST(Path, GridShapeAndEndpoints) {
    std::mt19937_64 rng(12);
    const Instance inst = random_instance(rng, Family::gaussian, 80, 6, false);
    const PenaltySpec pen = PenaltySpec::uniform(6);
    const auto path = regularization_path(inst.X, inst.targets, inst.weights, pen, inst.family, 30);
    ASSERT_EQ(path.size(), 30u);
    EXPECT_TRUE(path.front().active_set.empty());
    for (std::size_t i = 1; i < path.size(); ++i) EXPECT_LT(path[i].lambda, path[i - 1].lambda);
    EXPECT_NEAR(path.back().lambda / path.front().lambda, 1e-4, 1e-12);
    for (int j : path.front().active_set) {
        EXPECT_NE(std::find(path.back().active_set.begin(), path.back().active_set.end(), j),
                  path.back().active_set.end());
    }
    EXPECT_THROW(lambda_grid(1.0, 1), std::invalid_argument);
}

TEST(Path, WarmStartMatchesColdStart) {
    std::mt19937_64 rng(13);
    for (Family kind : {Family::gaussian, Family::binomial}) {
        const Instance inst = random_instance(rng, kind, 100, 5, true);
        const PenaltySpec pen = random_penalty(rng, 5, 0.0);
        const auto path = regularization_path(inst.X, inst.targets, inst.weights, pen, inst.family, 25);
        PenaltySpec end = pen;
        end.lambda = path.back().lambda;
        const FitResult cold = fit_weighted_lasso_glm(inst.X, inst.targets, inst.weights, inst.family, end);
        EXPECT_LT((cold.beta - path.back().beta).lpNorm<Eigen::Infinity>(), 1e-6);
    }
}

TEST(Mle, GaussianIsOls) {
    std::mt19937_64 rng(14);
    const Eigen::MatrixXd X = design_with_intercept(50, 4, rng);
    const Eigen::VectorXd y = normal_vector(50, rng);
    Dataset d{X, y, FamilySpec::gaussian(), {}};
    const Eigen::VectorXd ols = (X.transpose() * X).ldlt().solve(X.transpose() * y);
    EXPECT_LT((mle_fit(d) - ols).lpNorm<Eigen::Infinity>(), 1e-10);
}

TEST(Mle, BinomialInterceptOnlyBalanced) {
    Eigen::MatrixXd X = Eigen::MatrixXd::Ones(10, 1);
    Eigen::VectorXd y(10);
    y << 0, 1, 0, 1, 0, 1, 0, 1, 0, 1;
    EXPECT_NEAR(mle_fit(Dataset{X, y, FamilySpec::binomial(), {}})[0], 0.0, 1e-12);
}

TEST(Mle, BinomialMatchesNewtonOracle) {
    std::mt19937_64 rng(100);
    const Eigen::MatrixXd X = design_with_intercept(100, 3, rng);
    const Eigen::VectorXd y = testing_support::bernoulli_response(X * Eigen::Vector4d(0.3, 1.0, -0.7, 0.2), rng);
    const Dataset d{X, y, FamilySpec::binomial(), {}};
    const Eigen::VectorXd mine = mle_fit(d);
    const Eigen::VectorXd oracle = testing_support::newton_logistic(X, y, 1e-12);
    EXPECT_LT((mine - oracle).lpNorm<Eigen::Infinity>(), 1e-8);
    Eigen::VectorXd mu(100);
    for (int i = 0; i < 100; ++i) mu[i] = family_mean(FamilySpec::binomial(), X.row(i).dot(mine));
    EXPECT_LT((X.transpose() * (y - mu)).norm(), 1e-8);
}

TEST(Mle, PoissonScoreVanishes) {
    std::mt19937_64 rng(15);
    const Instance inst = random_instance(rng, Family::poisson, 120, 3, false);
    const Dataset d{inst.X, inst.targets, inst.family, {}};
    const Eigen::VectorXd beta = mle_fit(d);
    Eigen::VectorXd mu(120);
    for (int i = 0; i < 120; ++i) mu[i] = std::exp(inst.X.row(i).dot(beta));
    EXPECT_LT((inst.X.transpose() * (inst.targets - mu)).norm(), 1e-8);
}

TEST(Mle, ErrorsOnSingularAndSeparatedData) {
    std::mt19937_64 rng(16);
    Eigen::MatrixXd X = design_with_intercept(20, 3, rng);
    X.col(3) = 2.0 * X.col(1);
    EXPECT_THROW(mle_fit(Dataset{X, normal_vector(20, rng), FamilySpec::gaussian(), {}}), NumericalError);

    const Eigen::MatrixXd wide = design_with_intercept(4, 3, rng);
    EXPECT_THROW(mle_fit(Dataset{wide, normal_vector(4, rng), FamilySpec::gaussian(), {}}), NumericalError);

    Eigen::MatrixXd Xs = design_with_intercept(30, 1, rng);
    Eigen::VectorXd ys(30);
    for (int i = 0; i < 30; ++i) ys[i] = Xs(i, 1) > 0 ? 1.0 : 0.0;
    EXPECT_THROW(mle_fit(Dataset{Xs, ys, FamilySpec::binomial(), {}}), NumericalError);
}

TEST(Pilot, FallsBackToRidgeWhenWide) {
    std::mt19937_64 rng(17);
    const Eigen::MatrixXd X = design_with_intercept(20, 30, rng);
    const Dataset d{X, normal_vector(20, rng), FamilySpec::gaussian(), {}};
    const PilotEstimate est = pilot_estimate(d);
    EXPECT_TRUE(est.regularized);
    EXPECT_TRUE(est.beta.allFinite());
    EXPECT_THROW(pilot_estimate(d, false), NumericalError);

    const Dataset tall{design_with_intercept(50, 3, rng), normal_vector(50, rng), FamilySpec::gaussian(), {}};
    EXPECT_FALSE(pilot_estimate(tall).regularized);
}

TEST(AdaptiveWeights, Examples) {
    const PenaltySpec a = adaptive_weights(Eigen::Vector2d(2.0, -0.5));
    EXPECT_DOUBLE_EQ(a.weights[0], 0.5);
    EXPECT_DOUBLE_EQ(a.weights[1], 2.0);
    EXPECT_FALSE(a.exclude[0] || a.exclude[1]);

    const PenaltySpec b = adaptive_weights(Eigen::Vector3d(1.0, 0.0, -3.0));
    EXPECT_TRUE(b.exclude[1]);
    EXPECT_FALSE(b.exclude[0]);

    const PenaltySpec c = adaptive_weights(Eigen::VectorXd::Ones(4));
    EXPECT_TRUE(c.weights.isOnes());
}

// Property tests over randomized instances.

TEST(SolverProperties, KktHoldsOnRandomInstances) {
    std::mt19937_64 rng(1000);
    std::uniform_real_distribution<double> frac(0.02, 0.8);
    for (Family kind : {Family::gaussian, Family::binomial, Family::poisson}) {
        for (int rep = 0; rep < 20; ++rep) {
            const Instance inst = random_instance(rng, kind, 80, 6, rep % 2 == 0);
            PenaltySpec pen = random_penalty(rng, 6, 0.0);
            if (rep % 3 == 0) pen.exclude[2] = true;
            pen.lambda = frac(rng) * lambda_max(inst.X, inst.targets, inst.weights, pen, inst.family);
            const FitResult fit = fit_weighted_lasso_glm(inst.X, inst.targets, inst.weights, inst.family, pen);
            EXPECT_LT(kkt_violation(fit.beta, inst.X, inst.targets, inst.weights, inst.family, pen), 1e-5)
                << to_string(kind) << " rep " << rep;
            for (Eigen::Index j = 1; j <= 6; ++j) {
                const bool active = std::find(fit.active_set.begin(), fit.active_set.end(), j) != fit.active_set.end();
                EXPECT_EQ(active, fit.beta[j] != 0.0);
            }
        }
    }
}

TEST(SolverProperties, NoRandomPerturbationImproves) {
    std::mt19937_64 rng(1001);
    for (Family kind : {Family::gaussian, Family::binomial}) {
        const Instance inst = random_instance(rng, kind, 60, 4, true);
        PenaltySpec pen = random_penalty(rng, 4, 0.0);
        pen.lambda = 0.2 * lambda_max(inst.X, inst.targets, inst.weights, pen, inst.family);
        const FitResult fit = fit_weighted_lasso_glm(inst.X, inst.targets, inst.weights, inst.family, pen);
        const double best = penalized_objective(fit.beta, inst.X, inst.targets, inst.weights, inst.family, pen);
        for (int k = 0; k < 500; ++k) {
            Eigen::VectorXd eps = normal_vector(5, rng);
            eps *= 1e-3 / eps.norm();
            EXPECT_LE(best, penalized_objective(fit.beta + eps, inst.X, inst.targets, inst.weights,
                                                inst.family, pen) + 1e-14);
        }
    }
}

TEST(SolverProperties, JointScalingOfWeightsAndLambda) {
    std::mt19937_64 rng(1002);
    for (Family kind : {Family::gaussian, Family::binomial}) {
        const Instance inst = random_instance(rng, kind, 70, 5, true);
        PenaltySpec pen = random_penalty(rng, 5, 0.0);
        pen.lambda = 0.3 * lambda_max(inst.X, inst.targets, inst.weights, pen, inst.family);
        const FitResult base = fit_weighted_lasso_glm(inst.X, inst.targets, inst.weights, inst.family, pen);
        for (double c : {0.01, 3.7, 250.0}) {
            PenaltySpec scaled = pen;
            scaled.lambda *= c;
            const FitResult fit =
                fit_weighted_lasso_glm(inst.X, inst.targets, c * inst.weights, inst.family, scaled);
            EXPECT_LT((fit.beta - base.beta).lpNorm<Eigen::Infinity>(), 1e-8) << "c=" << c;
        }
    }
}

TEST(SolverProperties, UnitWeightsReproduceUnweightedSolver) {
    std::mt19937_64 rng(1003);
    const Instance inst = random_instance(rng, Family::binomial, 50, 3, false);
    const PenaltySpec pen = PenaltySpec::uniform(3, 0.02);
    const FitResult a = fit_weighted_lasso_glm(inst.X, inst.targets, inst.family, pen);
    const FitResult b = fit_weighted_lasso_glm(inst.X, inst.targets, Eigen::VectorXd::Ones(50), inst.family, pen);
    EXPECT_EQ(a.beta, b.beta);
}

TEST(SolverProperties, ObservedResponsesGiveAdaptiveLasso) {
    // Targets = y with adaptive weights is the ordinary adaptive lasso: check
    // against grid search of that objective directly.
    std::mt19937_64 rng(1004);
    const Instance inst = random_instance(rng, Family::gaussian, 40, 2, false);
    const Dataset d{inst.X, inst.targets, inst.family, {}};
    PenaltySpec pen = adaptive_weights(mle_fit(d).tail(2));
    pen.lambda = 0.05;
    const FitResult fit = fit_weighted_lasso_gaussian(inst.X, inst.targets, inst.weights, pen);
    auto f = [&](const Eigen::VectorXd& b) {
        return (inst.targets - inst.X * b).squaredNorm() / 80.0 +
               pen.lambda * (pen.weights.array() * b.tail(2).array().abs()).sum();
    };
    const auto grid = testing_support::grid_search(f, Eigen::Vector3d::Zero(), 6.0);
    EXPECT_NEAR(f(fit.beta), grid.value, 1e-9);
    EXPECT_LT((fit.beta - grid.point).lpNorm<Eigen::Infinity>(), 1e-5);
}
