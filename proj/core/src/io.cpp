#include "plasso/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "plasso/error.hpp"

namespace plasso {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    std::string out(s.substr(first, last - first + 1));
    if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "?";
}

struct Table {
    std::vector<std::string> header;
    Eigen::MatrixXd values;
};

Table read_table(std::istream& in, const std::string& source) {
    Table table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) throw DataError(source + ": empty file");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    table.header = split(line);
    const std::size_t width = table.header.size();

    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> missing_rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        if (fields.size() != width) {
            throw DataError(source + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(width) + " fields, found " +
                            std::to_string(fields.size()));
        }
        std::vector<double> row(width);
        bool missing = false;
        for (std::size_t c = 0; c < width; ++c) {
            const std::string& cell = fields[c];
            if (is_missing(cell)) {
                missing = true;
                continue;
            }
            const char* begin = cell.data();
            const char* end = begin + cell.size();
            if (*begin == '+') ++begin;
            const auto [ptr, ec] = std::from_chars(begin, end, row[c]);
            if (ec != std::errc() || ptr != end) {
                throw DataError(source + ":" + std::to_string(line_no) + ": column '" +
                                table.header[c] + "': cannot parse '" + cell + "' as a number");
            }
        }
        if (missing) missing_rows.push_back(rows.size() + 1);
        rows.push_back(std::move(row));
    }
    if (!missing_rows.empty()) {
        std::ostringstream msg;
        msg << source << ": missing values in data rows";
        for (std::size_t i = 0; i < missing_rows.size() && i < 20; ++i) msg << ' ' << missing_rows[i];
        if (missing_rows.size() > 20) msg << " ... (" << missing_rows.size() << " rows)";
        throw DataError(msg.str());
    }
    table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return table;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return in;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

Dataset parse_csv(std::istream& in, const std::string& response_column, const FamilySpec& family,
                  const std::string& source) {
    const Table table = read_table(in, source);
    std::ptrdiff_t response = -1;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (table.header[c] == response_column) response = static_cast<std::ptrdiff_t>(c);
    }
    if (response < 0) {
        throw DataError(source + ": response column '" + response_column + "' not found");
    }
    const Eigen::Index n = table.values.rows();
    const Eigen::Index width = table.values.cols();
    Eigen::MatrixXd covariates(n, width - 1);
    std::vector<std::string> names;
    for (Eigen::Index c = 0, k = 0; c < width; ++c) {
        if (c == response) continue;
        covariates.col(k++) = table.values.col(c);
        names.push_back(table.header[static_cast<std::size_t>(c)]);
    }
    return make_dataset(covariates, table.values.col(response), family, std::move(names));
}

Dataset load_csv(const std::string& path, const std::string& response_column,
                 const FamilySpec& family) {
    auto in = open_input(path);
    return parse_csv(in, response_column, family, path);
}

Eigen::MatrixXd load_design_csv(const std::string& path) {
    auto in = open_input(path);
    const Table table = read_table(in, path);
    Eigen::MatrixXd X(table.values.rows(), table.values.cols() + 1);
    X.col(0).setOnes();
    X.rightCols(table.values.cols()) = table.values;
    return X;
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_csv(const std::string& path, const Dataset& dataset, const std::string& response_column) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (Eigen::Index j = 1; j <= dataset.p(); ++j) {
        out << (dataset.covariate_names.empty() ? "x" + std::to_string(j)
                                                : dataset.covariate_names[static_cast<std::size_t>(j - 1)])
            << ',';
    }
    out << response_column << '\n';
    for (Eigen::Index i = 0; i < dataset.n(); ++i) {
        for (Eigen::Index j = 1; j <= dataset.p(); ++j) out << format_double(dataset.X(i, j)) << ',';
        out << format_double(dataset.y[i]) << '\n';
    }
}

nlohmann::json to_json(const FitResult& fit, const std::vector<std::string>& names) {
    nlohmann::json j;
    j["method"] = to_string(fit.method);
    j["family"] = to_string(fit.family.kind);
    j["lambda"] = fit.lambda;
    j["beta"] = vector_to_json(fit.beta);
    j["active_set"] = fit.active_set;
    j["zero_count"] = fit.zero_count();
    j["n_iterations"] = fit.n_iterations;
    j["pilot_regularized"] = fit.pilot_regularized;
    j["sigma2_hat"] = fit.sigma2_hat ? nlohmann::json(*fit.sigma2_hat) : nlohmann::json(nullptr);
    if (fit.variance_shape) {
        const Eigen::MatrixXd& V = *fit.variance_shape;
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index r = 0; r < V.rows(); ++r) rows.push_back(vector_to_json(V.row(r).transpose()));
        j["variance_shape"] = rows;
    }
    if (!names.empty()) {
        nlohmann::json labels = nlohmann::json::array({"(intercept)"});
        for (const auto& n : names) labels.push_back(n);
        j["coefficient_names"] = labels;
    }
    return j;
}

FitResult fit_from_json(const nlohmann::json& j) {
    FitResult fit;
    fit.method = method_from_string(j.at("method").get<std::string>());
    const Family kind = family_from_string(j.at("family").get<std::string>());
    fit.family = kind == Family::gaussian   ? FamilySpec::gaussian()
                 : kind == Family::binomial ? FamilySpec::binomial()
                                            : FamilySpec::poisson();
    fit.lambda = j.at("lambda").get<double>();
    fit.beta = vector_from_json(j.at("beta"));
    for (Eigen::Index k = 1; k < fit.beta.size(); ++k) {
        if (fit.beta[k] != 0.0) fit.active_set.push_back(static_cast<int>(k));
    }
    fit.n_iterations = j.value("n_iterations", 0);
    fit.pilot_regularized = j.value("pilot_regularized", false);
    if (j.contains("sigma2_hat") && !j["sigma2_hat"].is_null()) {
        fit.sigma2_hat = j["sigma2_hat"].get<double>();
    }
    if (j.contains("variance_shape")) {
        const auto& rows = j["variance_shape"];
        const auto k = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd V(k, k);
        for (Eigen::Index r = 0; r < k; ++r) {
            const Eigen::VectorXd row = vector_from_json(rows[static_cast<std::size_t>(r)]);
            if (row.size() != k) throw DimensionError("fit JSON: variance_shape is not square");
            V.row(r) = row.transpose();
        }
        fit.variance_shape = V;
    }
    return fit;
}

nlohmann::json to_json(const CVResult& cv) {
    nlohmann::json j;
    j["lambda_grid"] = cv.lambda_grid;
    j["cv_scores"] = cv.cv_scores;
    j["lambda_star"] = cv.lambda_star;
    j["best_index"] = cv.best_index;
    j["fold_assignments"] = cv.fold_assignments;
    return j;
}

nlohmann::json to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    const auto& s = config.scenario;
    j["scenario"] = {{"design", to_string(s.design)}, {"n_train", s.n_train},
                     {"n_predict", s.n_predict},     {"sigma", s.sigma},
                     {"replications", s.n_replications}, {"seed", s.seed}};
    nlohmann::json methods = nlohmann::json::array();
    for (Method m : config.methods) methods.push_back(to_string(m));
    j["methods"] = methods;
    const auto& mc = config.method_config;
    j["prior"] = to_string(mc.prior);
    j["glm_targets"] = to_string(mc.glm_targets);
    j["gprior_c"] = mc.gprior_c;
    j["pilot"] = mc.pilot_posterior_mode ? "posterior_mode" : "mle";
    j["mcmc"] = {{"draws", mc.mcmc.n_draws}, {"burn_in", mc.mcmc.burn_in},
                 {"step_scale", mc.mcmc.step_scale}, {"seed", mc.mcmc.seed}};
    j["cv"] = {{"k", config.cv.k}, {"n_lambda", config.cv.n_lambda},
               {"lambda_min_ratio", config.cv.lambda_min_ratio}, {"seed", config.cv.seed}};
    j["threads"] = config.n_threads;
    return j;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    if (j.contains("seed")) {
        const auto seed = j["seed"].get<std::uint64_t>();
        config.scenario.seed = seed;
        config.cv.seed = seed;
        config.method_config.mcmc.seed = seed;
    }
    if (j.contains("scenario")) {
        const auto& s = j["scenario"];
        auto& sc = config.scenario;
        if (s.contains("design")) sc.design = design_from_string(s["design"].get<std::string>());
        sc.n_train = s.value("n_train", sc.n_train);
        sc.n_predict = s.value("n_predict", sc.n_predict);
        sc.sigma = s.value("sigma", sc.sigma);
        sc.n_replications = s.value("replications", sc.n_replications);
        sc.seed = s.value("seed", sc.seed);
    }
    if (j.contains("methods")) {
        config.methods.clear();
        for (const auto& m : j["methods"]) config.methods.push_back(method_from_string(m.get<std::string>()));
    }
    auto& mc = config.method_config;
    if (j.contains("prior")) mc.prior = prior_from_string(j["prior"].get<std::string>());
    if (j.contains("glm_targets")) {
        mc.glm_targets = glm_targets_from_string(j["glm_targets"].get<std::string>());
    }
    mc.gprior_c = j.value("gprior_c", mc.gprior_c);
    if (j.contains("pilot")) {
        const auto pilot = j["pilot"].get<std::string>();
        if (pilot != "mle" && pilot != "posterior_mode") {
            throw std::invalid_argument("unknown pilot '" + pilot + "'");
        }
        mc.pilot_posterior_mode = pilot == "posterior_mode";
    }
    if (j.contains("mcmc")) {
        const auto& m = j["mcmc"];
        mc.mcmc.n_draws = m.value("draws", mc.mcmc.n_draws);
        mc.mcmc.burn_in = m.value("burn_in", mc.mcmc.burn_in);
        mc.mcmc.step_scale = m.value("step_scale", mc.mcmc.step_scale);
        mc.mcmc.seed = m.value("seed", mc.mcmc.seed);
    }
    if (j.contains("cv")) {
        const auto& c = j["cv"];
        config.cv.k = c.value("k", config.cv.k);
        config.cv.n_lambda = c.value("n_lambda", config.cv.n_lambda);
        config.cv.lambda_min_ratio = c.value("lambda_min_ratio", config.cv.lambda_min_ratio);
        config.cv.seed = c.value("seed", config.cv.seed);
    }
    config.n_threads = j.value("threads", config.n_threads);
    return config;
}

nlohmann::json to_json(const ReplicationRun& run, const ExperimentConfig& config) {
    nlohmann::json j;
    j["config"] = to_json(config);
    nlohmann::json summaries = nlohmann::json::array();
    for (const auto& s : run.summaries) {
        summaries.push_back({{"method", to_string(s.method)},
                             {"mean_pps", s.mean_pps},
                             {"sd_pps", s.sd_pps},
                             {"mean_pps_constant_free", s.mean_pps_constant_free},
                             {"mean_zero_count", s.mean_zero_count},
                             {"sd_zero_count", s.sd_zero_count},
                             {"n_replications", s.n_replications},
                             {"n_failed", s.n_failed}});
    }
    j["summaries"] = summaries;
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& r : run.records) {
        if (!r.ok) {
            failures.push_back({{"replication", r.replication},
                                {"method", to_string(r.method)},
                                {"error", r.error}});
        }
    }
    j["failures"] = failures;
    return j;
}

std::string summary_table_csv(const std::vector<ReplicationSummary>& summaries) {
    std::ostringstream out;
    out << "row";
    for (const auto& s : summaries) out << ',' << to_string(s.method);
    out << '\n';
    auto row = [&](const char* name, auto get) {
        out << name;
        for (const auto& s : summaries) out << ',' << format_double(get(s));
        out << '\n';
    };
    row("pps", [](const ReplicationSummary& s) { return s.mean_pps; });
    row("pps_sd", [](const ReplicationSummary& s) { return s.sd_pps; });
    row("pps_constant_free", [](const ReplicationSummary& s) { return s.mean_pps_constant_free; });
    row("zero_count", [](const ReplicationSummary& s) { return s.mean_zero_count; });
    row("zero_count_sd", [](const ReplicationSummary& s) { return s.sd_zero_count; });
    row("n_ok", [](const ReplicationSummary& s) { return double(s.n_replications); });
    row("n_failed", [](const ReplicationSummary& s) { return double(s.n_failed); });
    return out.str();
}

std::string records_csv(const std::vector<ReplicationRecord>& records) {
    std::ostringstream out;
    out << "replication,method,ok,lambda,pps,pps_constant_free,zero_count\n";
    for (const auto& r : records) {
        out << r.replication << ',' << to_string(r.method) << ',' << (r.ok ? 1 : 0) << ','
            << format_double(r.lambda) << ',' << format_double(r.pps) << ','
            << format_double(r.pps_constant_free) << ',' << r.zero_count << '\n';
    }
    return out.str();
}

}  // namespace plasso
