#pragma once

#include <cmath>
#include <functional>
#include <algorithm>
#include <limits>
#include <random>

#include <Eigen/Core>
#include <Eigen/Dense>

namespace testing_support {

inline Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> z;
    Eigen::MatrixXd M(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = z(rng);
    return M;
}

inline Eigen::VectorXd normal_vector(Eigen::Index n, std::mt19937_64& rng, double sd = 1.0) {
    std::normal_distribution<double> z(0.0, sd);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = z(rng);
    return v;
}

// n x (p+1) with a leading column of ones.
inline Eigen::MatrixXd design_with_intercept(Eigen::Index n, Eigen::Index p, std::mt19937_64& rng) {
    Eigen::MatrixXd X(n, p + 1);
    X.col(0).setOnes();
    X.rightCols(p) = normal_matrix(n, p, rng);
    return X;
}

inline Eigen::VectorXd bernoulli_response(const Eigen::VectorXd& eta, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u;
    Eigen::VectorXd y(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) y[i] = u(rng) < 1.0 / (1.0 + std::exp(-eta[i])) ? 1.0 : 0.0;
    return y;
}

struct GridMinimum {
    Eigen::VectorXd point;
    double value = std::numeric_limits<double>::infinity();
};

// Exhaustive grid search refined by zooming: each level evaluates a full
// tensor grid of `points` per axis, then recentres on the best point with a
// smaller box. Adequate for convex objectives in a handful of dimensions.
inline GridMinimum grid_search(const std::function<double(const Eigen::VectorXd&)>& f,
                               Eigen::VectorXd center, double h, double stop_width = 1e-10,
                               int points = 11) {
    const Eigen::Index d = center.size();
    GridMinimum best{center, f(center)};
    std::vector<int> idx(static_cast<std::size_t>(d));
    while (h > stop_width) {
        const double step = 2.0 * h / (points - 1);
        std::fill(idx.begin(), idx.end(), 0);
        Eigen::VectorXd x(d);
        while (true) {
            for (Eigen::Index k = 0; k < d; ++k) x[k] = center[k] - h + step * idx[static_cast<std::size_t>(k)];
            const double v = f(x);
            if (v < best.value) best = {x, v};
            Eigen::Index k = 0;
            while (k < d && ++idx[static_cast<std::size_t>(k)] == points) idx[static_cast<std::size_t>(k++)] = 0;
            if (k == d) break;
        }
        center = best.point;
        h = std::min(3.0 * step, 0.6 * h);
    }
    return best;
}

// Plain Newton-Raphson for the logistic log likelihood, written separately
// from the library's solver.
inline Eigen::VectorXd newton_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                       double tol = 1e-10) {
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(X.cols());
    for (int it = 0; it < 100; ++it) {
        Eigen::VectorXd p = (-(X * beta).array()).exp().matrix();
        for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = 1.0 / (1.0 + p[i]);
        const Eigen::VectorXd g = X.transpose() * (y - p);
        Eigen::MatrixXd H = X.transpose() * (p.array() * (1.0 - p.array())).matrix().asDiagonal() * X;
        const Eigen::VectorXd step = H.partialPivLu().solve(g);
        beta += step;
        if (step.lpNorm<Eigen::Infinity>() < tol) break;
    }
    return beta;
}

}  // namespace testing_support
