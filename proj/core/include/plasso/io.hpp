#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "plasso/experiments.hpp"
#include "plasso/glm.hpp"
#include "plasso/lasso.hpp"
#include "plasso/model_selection.hpp"

namespace plasso {

/// Reads a headered, comma-separated numeric table. The response column is
/// split off and an intercept column is prepended to the rest.
Dataset load_csv(const std::string& path, const std::string& response_column,
                 const FamilySpec& family);
Dataset parse_csv(std::istream& in, const std::string& response_column, const FamilySpec& family,
                  const std::string& source = "<stream>");

/// Covariate-only table (e.g. future design points), intercept prepended.
Eigen::MatrixXd load_design_csv(const std::string& path);

void write_csv(const std::string& path, const Dataset& dataset,
               const std::string& response_column = "y");

/// Shortest round-trip decimal form.
std::string format_double(double value);

nlohmann::json to_json(const FitResult& fit, const std::vector<std::string>& names = {});
FitResult fit_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CVResult& cv);

nlohmann::json to_json(const ExperimentConfig& config);
/// Missing fields keep their defaults. A top-level "seed" seeds both the
/// scenario and the CV folds unless those blocks set their own.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ReplicationRun& run, const ExperimentConfig& config);

/// Table layout: one column per method, rows pps, pps_sd, pps_constant_free,
/// zero_count, zero_count_sd, n_ok, n_failed.
std::string summary_table_csv(const std::vector<ReplicationSummary>& summaries);
std::string records_csv(const std::vector<ReplicationRecord>& records);

}  // namespace plasso
