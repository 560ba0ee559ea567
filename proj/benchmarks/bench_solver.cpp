#include <random>

#include <benchmark/benchmark.h>
#include <Eigen/Core>

#include "plasso/bayes_glm.hpp"
#include "plasso/experiments.hpp"
#include "plasso/lasso.hpp"
#include "plasso/model_selection.hpp"

namespace {

plasso::Dataset simulated(plasso::Design design, int n) {
    plasso::SimScenario s;
    s.design = design;
    s.n_train = n;
    return plasso::simulate_dataset(s, 0).train;
}

void BM_GaussianFit(benchmark::State& state) {
    const plasso::Dataset d = simulated(plasso::Design::normal_ar, static_cast<int>(state.range(0)));
    const plasso::PenaltySpec pen = plasso::PenaltySpec::uniform(d.p(), 0.05);
    const Eigen::VectorXd w = Eigen::VectorXd::Ones(d.n());
    for (auto _ : state) {
        benchmark::DoNotOptimize(plasso::fit_weighted_lasso_gaussian(d.X, d.y, w, pen));
    }
}
BENCHMARK(BM_GaussianFit)->Arg(200)->Arg(2000);

void BM_LargePath(benchmark::State& state) {
    const plasso::Dataset d = simulated(plasso::Design::large_p, 200);
    const Eigen::VectorXd w = Eigen::VectorXd::Ones(d.n());
    const plasso::PenaltySpec pen = plasso::PenaltySpec::uniform(d.p());
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            plasso::regularization_path(d.X, d.y, w, pen, plasso::FamilySpec::gaussian(), 100));
    }
}
BENCHMARK(BM_LargePath)->Unit(benchmark::kMillisecond);

void BM_CrossValidation(benchmark::State& state) {
    const plasso::Dataset d = simulated(plasso::Design::normal_ar, 200);
    plasso::MethodConfig c;
    c.method = plasso::Method::plasso;
    plasso::CvOptions opt;
    for (auto _ : state) benchmark::DoNotOptimize(plasso::kfold_cv(d, c, opt));
}
BENCHMARK(BM_CrossValidation)->Unit(benchmark::kMillisecond);

void BM_Metropolis(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    Eigen::MatrixXd X(200, 5);
    for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = z(rng);
    X.col(0).setOnes();
    Eigen::VectorXd y(200);
    for (Eigen::Index i = 0; i < 200; ++i) y[i] = z(rng) + X(i, 1) > 0 ? 1.0 : 0.0;
    const plasso::Dataset d{X, y, plasso::FamilySpec::binomial(), {}};
    plasso::McmcConfig cfg;
    cfg.n_draws = 2'000;
    cfg.burn_in = 500;
    for (auto _ : state) {
        benchmark::DoNotOptimize(plasso::sample_gelman_posterior(d, plasso::GelmanPrior{}, cfg));
    }
}
BENCHMARK(BM_Metropolis)->Unit(benchmark::kMillisecond);

}  // namespace
