#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "plasso/error.hpp"
#include "plasso/experiments.hpp"
#include "plasso/io.hpp"
#include "plasso/model_selection.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct MethodFlags {
    std::string method = "plasso";
    std::string family = "gaussian";
    std::string response = "y";
    std::string prior;
    std::string targets = "plugin";
    std::string pilot = "mle";
    std::string future;
    double gprior_c = 0.0;
    int mcmc_draws = 10'000;
    int mcmc_burn_in = 1'000;
    std::uint64_t mcmc_seed = 1;
};

void add_method_flags(CLI::App* cmd, MethodFlags& f) {
    cmd->add_option("--method", f.method, "alasso | plasso | wplasso")
        ->check(CLI::IsMember({"alasso", "plasso", "wplasso"}));
    cmd->add_option("--family", f.family, "gaussian | binomial | poisson")
        ->check(CLI::IsMember({"gaussian", "binomial", "poisson"}));
    cmd->add_option("--response", f.response, "Response column name");
    cmd->add_option("--prior", f.prior,
                    "raftery | gprior | noninformative (gaussian); gelman | chen_ibrahim (glm)");
    cmd->add_option("--targets", f.targets, "GLM predictive means: plugin | mcmc")
        ->check(CLI::IsMember({"plugin", "mcmc"}));
    cmd->add_option("--pilot", f.pilot, "Adaptive-weight pilot: mle | posterior_mode")
        ->check(CLI::IsMember({"mle", "posterior_mode"}));
    cmd->add_option("--future", f.future, "CSV of future design points (covariates only)");
    cmd->add_option("--gprior-c", f.gprior_c, "g-prior scale (<= 0 means n)");
    cmd->add_option("--mcmc-draws", f.mcmc_draws, "Posterior draws kept");
    cmd->add_option("--mcmc-burn-in", f.mcmc_burn_in, "Burn-in draws discarded");
    cmd->add_option("--mcmc-seed", f.mcmc_seed, "Sampler seed");
}

plasso::FamilySpec family_spec(const std::string& name) {
    switch (plasso::family_from_string(name)) {
        case plasso::Family::binomial: return plasso::FamilySpec::binomial();
        case plasso::Family::poisson: return plasso::FamilySpec::poisson();
        default: return plasso::FamilySpec::gaussian();
    }
}

plasso::MethodConfig method_config(const MethodFlags& f, plasso::Family family) {
    plasso::MethodConfig mc;
    mc.method = plasso::method_from_string(f.method);
    if (!f.prior.empty()) {
        mc.prior = plasso::prior_from_string(f.prior);
    } else {
        mc.prior = family == plasso::Family::gaussian ? plasso::PriorKind::raftery
                                                      : plasso::PriorKind::gelman;
    }
    mc.glm_targets = plasso::glm_targets_from_string(f.targets);
    mc.pilot_posterior_mode = f.pilot == "posterior_mode";
    mc.gprior_c = f.gprior_c;
    mc.mcmc.n_draws = f.mcmc_draws;
    mc.mcmc.burn_in = f.mcmc_burn_in;
    mc.mcmc.seed = f.mcmc_seed;
    if (!f.future.empty()) mc.future_points = plasso::load_design_csv(f.future);
    return mc;
}

plasso::Dataset load_data(const std::string& path, const MethodFlags& f) {
    plasso::Dataset data = plasso::load_csv(path, f.response, family_spec(f.family));
    std::cerr << "loaded " << path << ": " << data.n() << " rows, " << data.p() << " covariates\n";
    return data;
}

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream file(out);
    if (!file) throw plasso::DataError("cannot write '" + out + "'");
    file << j.dump(2) << '\n';
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw plasso::DataError("cannot write '" + path.string() + "'");
    file << text;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Predictive and adaptive lasso for generalized linear models"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Draw a train/predict pair from a scenario");
    std::string sim_design = "normal_ar";
    int sim_train = 200, sim_predict = 200, sim_rep = 0;
    double sim_sigma = 1.0;
    std::uint64_t sim_seed = 1;
    std::string sim_out = ".";
    simulate->add_option("--design", sim_design, "normal_ar | student_t | large_p")
        ->check(CLI::IsMember({"normal_ar", "student_t", "large_p"}));
    simulate->add_option("--n-train", sim_train);
    simulate->add_option("--n-predict", sim_predict);
    simulate->add_option("--sigma", sim_sigma);
    simulate->add_option("--seed", sim_seed);
    simulate->add_option("--replication", sim_rep, "Replication index");
    simulate->add_option("--out-dir", sim_out, "Directory for train.csv and predict.csv");

    // fit
    auto* fit = app.add_subcommand("fit", "Fit one method at a given lambda or by CV");
    MethodFlags fit_flags;
    std::string fit_data, fit_out;
    std::optional<double> fit_lambda;
    bool fit_cv = false;
    int fit_k = 5, fit_nlambda = 100;
    std::uint64_t fit_seed = 1;
    add_method_flags(fit, fit_flags);
    fit->add_option("--data", fit_data, "Training CSV")->required();
    auto* lambda_opt = fit->add_option("--lambda", fit_lambda, "Penalty level");
    auto* cv_flag = fit->add_flag("--cv", fit_cv, "Select lambda by k-fold CV");
    lambda_opt->excludes(cv_flag);
    fit->add_option("--k", fit_k, "CV folds");
    fit->add_option("--n-lambda", fit_nlambda, "CV grid size");
    fit->add_option("--seed", fit_seed, "CV fold seed");
    fit->add_option("--out", fit_out, "Output JSON (default stdout)");

    // cv
    auto* cv = app.add_subcommand("cv", "Cross-validate lambda for one method");
    MethodFlags cv_flags;
    std::string cv_data, cv_out;
    int cv_k = 5, cv_nlambda = 100;
    double cv_ratio = 0.0;
    std::uint64_t cv_seed = 1;
    add_method_flags(cv, cv_flags);
    cv->add_option("--data", cv_data, "Training CSV")->required();
    cv->add_option("--k", cv_k, "Folds");
    cv->add_option("--n-lambda", cv_nlambda, "Grid size");
    cv->add_option("--lambda-min-ratio", cv_ratio, "Smallest grid value relative to lambda_max (0: automatic)");
    cv->add_option("--seed", cv_seed, "Fold seed");
    cv->add_option("--out", cv_out, "Output JSON (default stdout)");

    // eval
    auto* eval = app.add_subcommand("eval", "Partial predictive score of a saved fit");
    std::string eval_fit, eval_data, eval_response = "y";
    eval->add_option("--fit", eval_fit, "Fit JSON written by `fit`")->required();
    eval->add_option("--data", eval_data, "Prediction CSV")->required();
    eval->add_option("--response", eval_response, "Response column name");

    // replicate
    auto* replicate = app.add_subcommand("replicate", "Run a simulation study");
    std::string rep_config, rep_out = ".";
    std::optional<std::string> rep_design, rep_methods, rep_prior, rep_targets, rep_pilot;
    std::optional<int> rep_train, rep_predict, rep_reps, rep_threads, rep_k, rep_nlambda,
        rep_draws, rep_burn;
    std::optional<double> rep_sigma, rep_ratio, rep_gc;
    std::optional<std::uint64_t> rep_seed, rep_cv_seed, rep_mcmc_seed;
    replicate->add_option("--config", rep_config, "Experiment JSON");
    replicate->add_option("--out-dir", rep_out, "Directory for summary and per-replication files");
    replicate->add_option("--design", rep_design);
    replicate->add_option("--n-train", rep_train);
    replicate->add_option("--n-predict", rep_predict);
    replicate->add_option("--sigma", rep_sigma);
    replicate->add_option("--replications", rep_reps);
    replicate->add_option("--seed", rep_seed, "Seeds scenario, folds and sampler");
    replicate->add_option("--methods", rep_methods, "Comma-separated list");
    replicate->add_option("--prior", rep_prior);
    replicate->add_option("--glm-targets", rep_targets);
    replicate->add_option("--pilot", rep_pilot);
    replicate->add_option("--gprior-c", rep_gc);
    replicate->add_option("--mcmc-draws", rep_draws);
    replicate->add_option("--mcmc-burn-in", rep_burn);
    replicate->add_option("--mcmc-seed", rep_mcmc_seed);
    replicate->add_option("--cv-k", rep_k);
    replicate->add_option("--n-lambda", rep_nlambda);
    replicate->add_option("--lambda-min-ratio", rep_ratio);
    replicate->add_option("--cv-seed", rep_cv_seed);
    replicate->add_option("--threads", rep_threads);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            plasso::SimScenario sc;
            sc.design = plasso::design_from_string(sim_design);
            sc.n_train = sim_train;
            sc.n_predict = sim_predict;
            sc.sigma = sim_sigma;
            sc.seed = sim_seed;
            sc.n_replications = sim_rep + 1;
            const auto data = plasso::simulate_dataset(sc, sim_rep);
            fs::create_directories(sim_out);
            plasso::write_csv((fs::path(sim_out) / "train.csv").string(), data.train);
            plasso::write_csv((fs::path(sim_out) / "predict.csv").string(), data.predict);
            std::cerr << "wrote " << data.train.n() << " training and " << data.predict.n()
                      << " prediction rows to " << sim_out << '\n';
        } else if (*fit) {
            if (!fit_lambda && !fit_cv) throw CLI::ValidationError("fit", "give --lambda or --cv");
            const plasso::Dataset data = load_data(fit_data, fit_flags);
            const plasso::MethodConfig mc = method_config(fit_flags, data.family.kind);
            json out;
            double lambda = fit_lambda.value_or(0.0);
            if (fit_cv) {
                plasso::CvOptions opts;
                opts.k = fit_k;
                opts.n_lambda = fit_nlambda;
                opts.seed = fit_seed;
                const plasso::CVResult res = plasso::kfold_cv(data, mc, opts);
                lambda = res.lambda_star;
                out["cv"] = plasso::to_json(res);
            }
            const plasso::FitResult result = plasso::fit_method(data, mc, lambda);
            json j = plasso::to_json(result, data.covariate_names);
            if (out.contains("cv")) j["cv"] = out["cv"];
            emit(j, fit_out);
        } else if (*cv) {
            const plasso::Dataset data = load_data(cv_data, cv_flags);
            const plasso::MethodConfig mc = method_config(cv_flags, data.family.kind);
            plasso::CvOptions opts;
            opts.k = cv_k;
            opts.n_lambda = cv_nlambda;
            opts.lambda_min_ratio = cv_ratio;
            opts.seed = cv_seed;
            emit(plasso::to_json(plasso::kfold_cv(data, mc, opts)), cv_out);
        } else if (*eval) {
            std::ifstream in(eval_fit);
            if (!in) throw plasso::DataError("cannot open '" + eval_fit + "'");
            const plasso::FitResult result = plasso::fit_from_json(json::parse(in));
            const plasso::Dataset data = plasso::load_csv(eval_data, eval_response, result.family);
            std::cerr << "loaded " << eval_data << ": " << data.n() << " rows, " << data.p()
                      << " covariates\n";
            json j;
            j["pps"] = plasso::pps(result, data);
            j["pps_constant_free"] = plasso::pps_constant_free(result, data);
            j["n"] = data.n();
            std::cout << j.dump(2) << '\n';
        } else if (*replicate) {
            json cfg = json::object();
            if (!rep_config.empty()) {
                std::ifstream in(rep_config);
                if (!in) throw plasso::DataError("cannot open '" + rep_config + "'");
                cfg = json::parse(in);
            }
            if (rep_seed) {
                cfg["seed"] = *rep_seed;
                for (const char* block : {"scenario", "cv", "mcmc"}) {
                    if (cfg.contains(block)) cfg[block].erase("seed");
                }
            }
            auto set = [&](const char* block, const char* key, const auto& value) {
                if (value) cfg[block][key] = *value;
            };
            set("scenario", "design", rep_design);
            set("scenario", "n_train", rep_train);
            set("scenario", "n_predict", rep_predict);
            set("scenario", "sigma", rep_sigma);
            set("scenario", "replications", rep_reps);
            set("mcmc", "draws", rep_draws);
            set("mcmc", "burn_in", rep_burn);
            set("mcmc", "seed", rep_mcmc_seed);
            set("cv", "k", rep_k);
            set("cv", "n_lambda", rep_nlambda);
            set("cv", "lambda_min_ratio", rep_ratio);
            set("cv", "seed", rep_cv_seed);
            if (rep_methods) cfg["methods"] = split_list(*rep_methods);
            if (rep_prior) cfg["prior"] = *rep_prior;
            if (rep_targets) cfg["glm_targets"] = *rep_targets;
            if (rep_pilot) cfg["pilot"] = *rep_pilot;
            if (rep_gc) cfg["gprior_c"] = *rep_gc;
            if (rep_threads) cfg["threads"] = *rep_threads;

            const plasso::ExperimentConfig config = plasso::experiment_config_from_json(cfg);
            const plasso::ReplicationRun run = plasso::run_replications(config);
            fs::create_directories(rep_out);
            const std::string table = plasso::summary_table_csv(run.summaries);
            write_text(fs::path(rep_out) / "summary.csv", table);
            write_text(fs::path(rep_out) / "summary.json",
                       plasso::to_json(run, config).dump(2) + "\n");
            write_text(fs::path(rep_out) / "replications.csv", plasso::records_csv(run.records));
            std::cout << table;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
