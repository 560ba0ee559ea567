#include "plasso/glm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "plasso/error.hpp"

namespace plasso {

namespace {

void require_finite(double theta, const char* op) {
    if (!std::isfinite(theta)) {
        throw DomainError(std::string(op) + ": non-finite natural parameter");
    }
}

// log(1 + e^t) without overflow.
double log1p_exp(double t) { return std::log1p(std::exp(-std::abs(t))) + std::max(t, 0.0); }

double logistic(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

}  // namespace

std::string_view to_string(Family family) {
    switch (family) {
        case Family::gaussian: return "gaussian";
        case Family::binomial: return "binomial";
        case Family::poisson: return "poisson";
    }
    return "unknown";
}

Family family_from_string(std::string_view name) {
    if (name == "gaussian") return Family::gaussian;
    if (name == "binomial") return Family::binomial;
    if (name == "poisson") return Family::poisson;
    throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

FamilySpec FamilySpec::gaussian(double sigma2, bool known) {
    if (!(sigma2 > 0.0)) throw DomainError("gaussian family: sigma2 must be positive");
    return {Family::gaussian, known, sigma2};
}

FamilySpec FamilySpec::binomial() { return {Family::binomial, true, 1.0}; }

FamilySpec FamilySpec::poisson() { return {Family::poisson, true, 1.0}; }

double family_b(const FamilySpec& family, double theta) {
    require_finite(theta, "family_b");
    switch (family.kind) {
        case Family::gaussian: return 0.5 * theta * theta;
        case Family::binomial: return log1p_exp(theta);
        case Family::poisson: return std::exp(theta);
    }
    return 0.0;
}

double family_mean(const FamilySpec& family, double theta) {
    require_finite(theta, "family_mean");
    switch (family.kind) {
        case Family::gaussian: return theta;
        case Family::binomial: return logistic(theta);
        case Family::poisson: return std::exp(theta);
    }
    return 0.0;
}

double family_variance(const FamilySpec& family, double theta) {
    require_finite(theta, "family_variance");
    switch (family.kind) {
        case Family::gaussian: return 1.0;
        case Family::binomial: {
            const double mu = logistic(theta);
            return mu * (1.0 - mu);
        }
        case Family::poisson: return std::exp(theta);
    }
    return 0.0;
}

double family_link(const FamilySpec& family, double mu) {
    switch (family.kind) {
        case Family::gaussian: return mu;
        case Family::binomial: {
            const double m = std::clamp(mu, 1e-10, 1.0 - 1e-10);
            return std::log(m / (1.0 - m));
        }
        case Family::poisson: return std::log(std::max(mu, 1e-10));
    }
    return 0.0;
}

double glm_objective(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                     const Eigen::VectorXd& targets, const Eigen::VectorXd& obs_weights,
                     const FamilySpec& family) {
    if (X.cols() != beta.size() || X.rows() != targets.size() ||
        X.rows() != obs_weights.size()) {
        throw DimensionError("glm_objective: dimension mismatch");
    }
    const Eigen::VectorXd eta = X * beta;
    double total = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        if (obs_weights[i] == 0.0) continue;
        total += obs_weights[i] * (family_b(family, eta[i]) - targets[i] * eta[i]);
    }
    return total / static_cast<double>(X.rows());
}

double log_density(const FamilySpec& family, double y, double eta, double sigma2) {
    switch (family.kind) {
        case Family::gaussian: {
            if (!(sigma2 > 0.0)) throw DomainError("log_density: sigma2 must be positive");
            const double r = y - eta;
            return -0.5 * std::log(2.0 * std::numbers::pi * sigma2) - r * r / (2.0 * sigma2);
        }
        case Family::binomial: return y * eta - log1p_exp(eta);
        case Family::poisson: return y * eta - std::exp(eta) - std::lgamma(y + 1.0);
    }
    return 0.0;
}

void Dataset::validate() const {
    if (X.rows() < 1) throw DataError("dataset: need at least one observation");
    if (X.cols() < 1) throw DataError("dataset: design matrix has no intercept column");
    if (y.size() != X.rows()) {
        std::ostringstream msg;
        msg << "dataset: " << X.rows() << " design rows but " << y.size() << " responses";
        throw DimensionError(msg.str());
    }
    if (!X.allFinite() || !y.allFinite()) throw DataError("dataset: non-finite entries");
    if (!(X.col(0).array() == 1.0).all()) {
        throw DataError("dataset: first design column must be identically 1");
    }
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double v = y[i];
        if (family.kind == Family::binomial && v != 0.0 && v != 1.0) {
            throw DataError("dataset: binomial response at row " + std::to_string(i) +
                            " is not 0 or 1");
        }
        if (family.kind == Family::poisson && (v < 0.0 || v != std::floor(v))) {
            throw DataError("dataset: poisson response at row " + std::to_string(i) +
                            " is not a nonnegative integer");
        }
    }
    if (!covariate_names.empty() && static_cast<Eigen::Index>(covariate_names.size()) != p()) {
        throw DimensionError("dataset: covariate name count does not match p");
    }
}

Dataset Dataset::rows(std::span<const int> index) const {
    Dataset out;
    out.X.resize(static_cast<Eigen::Index>(index.size()), X.cols());
    out.y.resize(static_cast<Eigen::Index>(index.size()));
    for (std::size_t r = 0; r < index.size(); ++r) {
        out.X.row(static_cast<Eigen::Index>(r)) = X.row(index[r]);
        out.y[static_cast<Eigen::Index>(r)] = y[index[r]];
    }
    out.family = family;
    out.covariate_names = covariate_names;
    return out;
}

Dataset make_dataset(const Eigen::MatrixXd& covariates, const Eigen::VectorXd& y,
                     const FamilySpec& family, std::vector<std::string> names) {
    Dataset d;
    d.X.resize(covariates.rows(), covariates.cols() + 1);
    d.X.col(0).setOnes();
    d.X.rightCols(covariates.cols()) = covariates;
    d.y = y;
    d.family = family;
    d.covariate_names = std::move(names);
    d.validate();
    return d;
}

}  // namespace plasso
