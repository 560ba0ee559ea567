#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "plasso/glm.hpp"
#include "plasso/lasso.hpp"
#include "plasso/model_selection.hpp"

namespace plasso {

/// normal_ar: x ~ N_8(0, Sigma), Sigma_ij = 0.5^|i-j|.
/// student_t: multivariate t with 1.5 df and the same scale matrix.
/// large_p:   x ~ N_100(0, Sigma), beta_j = 5 at j = 10, 20, ..., 100.
enum class Design { normal_ar, student_t, large_p };

std::string_view to_string(Design design);
Design design_from_string(std::string_view name);

struct SimScenario {
    Design design = Design::normal_ar;
    int n_train = 200;
    int n_predict = 200;
    double sigma = 1.0;
    int n_replications = 50;
    std::uint64_t seed = 1;

    static constexpr double intercept = 2.0;
    static constexpr double t_df = 1.5;

    Eigen::Index p() const;
    Eigen::VectorXd true_slopes() const;
    void validate() const;
};

/// Sigma_ij = rho^|i-j|.
Eigen::MatrixXd ar1_covariance(Eigen::Index p, double rho);

/// Engine for replication `replication` of a run seeded with `seed`.
std::mt19937_64 replication_engine(std::uint64_t seed, std::uint64_t replication,
                                   std::uint64_t stream = 0);

struct SimulatedData {
    Dataset train;
    Dataset predict;
};

/// y = 2 + x'beta + sigma * eps. Deterministic in (scenario.seed, replication).
SimulatedData simulate_dataset(const SimScenario& scenario, int replication);

struct ReplicationRecord {
    int replication = 0;
    Method method = Method::alasso;
    bool ok = true;
    std::string error;
    double lambda = 0.0;
    double pps = 0.0;
    double pps_constant_free = 0.0;
    int zero_count = 0;
};

struct ReplicationSummary {
    Method method = Method::alasso;
    double mean_pps = 0.0;
    double sd_pps = 0.0;
    double mean_pps_constant_free = 0.0;
    double mean_zero_count = 0.0;
    double sd_zero_count = 0.0;
    int n_replications = 0;  // successful replications
    int n_failed = 0;
};

struct ExperimentConfig {
    SimScenario scenario;
    std::vector<Method> methods{Method::alasso, Method::plasso, Method::wplasso};
    MethodConfig method_config;  // method field is overwritten per method
    CvOptions cv;
    int n_threads = 1;
};

/// One replication: simulate, tune lambda by CV per method, refit on the
/// training set and score the prediction set.
std::vector<ReplicationRecord> run_replication(const ExperimentConfig& config, int replication);

std::vector<ReplicationSummary> summarize(const std::vector<ReplicationRecord>& records,
                                          const std::vector<Method>& methods);

struct ReplicationRun {
    std::vector<ReplicationRecord> records;  // ordered by (replication, method)
    std::vector<ReplicationSummary> summaries;
};

ReplicationRun run_replications(const ExperimentConfig& config);

}  // namespace plasso
