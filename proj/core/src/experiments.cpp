#include "plasso/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <thread>

#include <Eigen/Cholesky>

#include "plasso/error.hpp"

namespace plasso {

std::string_view to_string(Design design) {
    switch (design) {
        case Design::normal_ar: return "normal_ar";
        case Design::student_t: return "student_t";
        case Design::large_p: return "large_p";
    }
    return "unknown";
}

Design design_from_string(std::string_view name) {
    if (name == "normal_ar") return Design::normal_ar;
    if (name == "student_t") return Design::student_t;
    if (name == "large_p") return Design::large_p;
    throw std::invalid_argument("unknown design '" + std::string(name) + "'");
}

Eigen::Index SimScenario::p() const { return design == Design::large_p ? 100 : 8; }

Eigen::VectorXd SimScenario::true_slopes() const {
    if (design == Design::large_p) {
        Eigen::VectorXd beta = Eigen::VectorXd::Zero(100);
        for (int j = 10; j <= 100; j += 10) beta[j - 1] = 5.0;
        return beta;
    }
    Eigen::VectorXd beta(8);
    beta << 3.0, 2.0, 0.0, 0.0, 0.5, 0.5, 0.0, 0.0;
    return beta;
}

void SimScenario::validate() const {
    if (n_train < 2 || n_predict < 1) throw std::invalid_argument("scenario: sample sizes too small");
    if (!(sigma >= 0.0)) throw DomainError("scenario: sigma must be >= 0");
    if (n_replications < 1) throw std::invalid_argument("scenario: need at least one replication");
}

Eigen::MatrixXd ar1_covariance(Eigen::Index p, double rho) {
    Eigen::MatrixXd sigma(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) {
            sigma(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
        }
    }
    return sigma;
}

std::mt19937_64 replication_engine(std::uint64_t seed, std::uint64_t replication,
                                   std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replication),
                      static_cast<std::uint32_t>(replication >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

namespace {

Eigen::MatrixXd draw_covariates(const SimScenario& scenario, Eigen::Index n,
                                const Eigen::MatrixXd& chol_lower, std::mt19937_64& engine) {
    const Eigen::Index p = chol_lower.rows();
    std::normal_distribution<double> normal(0.0, 1.0);
    std::chi_squared_distribution<double> chi2(SimScenario::t_df);
    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd e(p);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) e[j] = normal(engine);
        Eigen::VectorXd x = chol_lower * e;
        if (scenario.design == Design::student_t) {
            x /= std::sqrt(chi2(engine) / SimScenario::t_df);
        }
        X.row(i) = x.transpose();
    }
    return X;
}

Dataset draw_dataset(const SimScenario& scenario, Eigen::Index n, const Eigen::MatrixXd& chol_lower,
                     const Eigen::VectorXd& beta, std::mt19937_64& engine) {
    const Eigen::MatrixXd covariates = draw_covariates(scenario, n, chol_lower, engine);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd y = (covariates * beta).array() + SimScenario::intercept;
    for (Eigen::Index i = 0; i < n; ++i) y[i] += scenario.sigma * normal(engine);
    return make_dataset(covariates, y, FamilySpec::gaussian());
}

double sample_sd(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

SimulatedData simulate_dataset(const SimScenario& scenario, int replication) {
    scenario.validate();
    const Eigen::Index p = scenario.p();
    const Eigen::MatrixXd L = ar1_covariance(p, 0.5).llt().matrixL();
    const Eigen::VectorXd beta = scenario.true_slopes();
    auto engine = replication_engine(scenario.seed, static_cast<std::uint64_t>(replication));
    SimulatedData data;
    data.train = draw_dataset(scenario, scenario.n_train, L, beta, engine);
    data.predict = draw_dataset(scenario, scenario.n_predict, L, beta, engine);
    return data;
}

std::vector<ReplicationRecord> run_replication(const ExperimentConfig& config, int replication) {
    const SimulatedData data = simulate_dataset(config.scenario, replication);
    std::vector<ReplicationRecord> records;
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
        ReplicationRecord rec;
        rec.replication = replication;
        rec.method = config.methods[m];
        MethodConfig mc = config.method_config;
        mc.method = rec.method;
        mc.mcmc.seed = replication_engine(config.method_config.mcmc.seed,
                                          static_cast<std::uint64_t>(replication), 2)();
        CvOptions cv = config.cv;
        cv.seed = replication_engine(config.cv.seed, static_cast<std::uint64_t>(replication), 1)();
        try {
            const CVResult tuned = kfold_cv(data.train, mc, cv);
            const FitResult fit = fit_method(data.train, mc, tuned.lambda_star);
            rec.lambda = tuned.lambda_star;
            rec.pps = pps(fit, data.predict);
            rec.pps_constant_free = pps_constant_free(fit, data.predict);
            rec.zero_count = static_cast<int>(fit.zero_count());
        } catch (const std::exception& e) {
            rec.ok = false;
            rec.error = e.what();
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<ReplicationSummary> summarize(const std::vector<ReplicationRecord>& records,
                                          const std::vector<Method>& methods) {
    std::vector<ReplicationSummary> out;
    for (Method method : methods) {
        ReplicationSummary s;
        s.method = method;
        std::vector<double> scores, constant_free, zeros;
        for (const auto& r : records) {
            if (r.method != method) continue;
            if (!r.ok) {
                ++s.n_failed;
                continue;
            }
            scores.push_back(r.pps);
            constant_free.push_back(r.pps_constant_free);
            zeros.push_back(r.zero_count);
        }
        s.n_replications = static_cast<int>(scores.size());
        if (!scores.empty()) {
            const double n = static_cast<double>(scores.size());
            for (std::size_t i = 0; i < scores.size(); ++i) {
                s.mean_pps += scores[i] / n;
                s.mean_pps_constant_free += constant_free[i] / n;
                s.mean_zero_count += zeros[i] / n;
            }
            s.sd_pps = sample_sd(scores, s.mean_pps);
            s.sd_zero_count = sample_sd(zeros, s.mean_zero_count);
        }
        out.push_back(s);
    }
    return out;
}

ReplicationRun run_replications(const ExperimentConfig& config) {
    config.scenario.validate();
    const int total = config.scenario.n_replications;
    std::vector<std::vector<ReplicationRecord>> per_rep(static_cast<std::size_t>(total));
    std::atomic<int> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (int rep = next++; rep < total; rep = next++) {
            per_rep[static_cast<std::size_t>(rep)] = run_replication(config, rep);
            for (const auto& r : per_rep[static_cast<std::size_t>(rep)]) {
                if (r.ok) continue;
                std::lock_guard lock(log_mutex);
                std::cerr << "replication " << rep << " (" << to_string(r.method)
                          << ") skipped: " << r.error << '\n';
            }
        }
    };
    const int threads = std::clamp(config.n_threads, 1, total);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    ReplicationRun run;
    for (auto& recs : per_rep) {
        for (auto& r : recs) run.records.push_back(std::move(r));
    }
    run.summaries = summarize(run.records, config.methods);
    return run;
}

}  // namespace plasso
