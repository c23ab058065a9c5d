#include "l0fusion/screening.hpp"

#include "l0fusion/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace l0fusion {

namespace {

// Indices of the k largest |v| entries, ties broken by lowest index.
std::vector<int> top_abs(const VectorXd& v, int k) {
    std::vector<int> idx(static_cast<size_t>(v.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(v[a]) > std::abs(v[b]);
    });
    idx.resize(static_cast<size_t>(std::min<Eigen::Index>(k, v.size())));
    return idx;
}

VectorXd refit(const MatrixXd& X, const VectorXd& y, const std::vector<int>& support) {
    MatrixXd Xs(X.rows(), static_cast<Eigen::Index>(support.size()));
    for (size_t i = 0; i < support.size(); ++i) Xs.col(static_cast<Eigen::Index>(i)) = X.col(support[i]);
    const VectorXd b = least_squares(Xs, y);
    VectorXd beta = VectorXd::Zero(X.cols());
    for (size_t i = 0; i < support.size(); ++i) beta[support[i]] = b[static_cast<Eigen::Index>(i)];
    return beta;
}

}  // namespace

void ScreeningConfig::validate(int p) const {
    if (pi < 1 || pi > p) throw std::invalid_argument("ScreeningConfig: pi must be in [1, p]");
    if (l < 0) throw std::invalid_argument("ScreeningConfig: l must be >= 0");
    if (tau < 0.0) throw std::invalid_argument("ScreeningConfig: tau must be >= 0");
    if (max_iters < 1) throw std::invalid_argument("ScreeningConfig: max_iters must be >= 1");
    if (beta0.size() != 0 && beta0.size() != p)
        throw std::invalid_argument("ScreeningConfig: beta0 length must be p");
}

ScreeningResult cosamp(const MatrixXd& X, const VectorXd& y, const ScreeningConfig& cfg) {
    const int p = static_cast<int>(X.cols());
    cfg.validate(p);
    const int l = cfg.l > 0 ? cfg.l : (cfg.pi + 1) / 2;
    const double tau = cfg.tau > 0.0 ? cfg.tau : 1e-6 * (1.0 + y.norm());

    VectorXd beta = cfg.beta0.size() == p ? cfg.beta0 : VectorXd::Zero(p);

    ScreeningResult res;
    for (int t = 0; t < cfg.max_iters; ++t) {
        const VectorXd grad = -2.0 * (X.transpose() * (y - X * beta));
        std::vector<int> expanded = top_abs(grad, l);
        for (int j = 0; j < p; ++j)
            if (beta[j] != 0.0) expanded.push_back(j);
        std::sort(expanded.begin(), expanded.end());
        expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());

        const VectorXd beta_dag = refit(X, y, expanded);
        std::vector<int> support = top_abs(beta_dag, cfg.pi);
        std::sort(support.begin(), support.end());
        const VectorXd beta_next = refit(X, y, support);

        res.iterations = t + 1;
        const double step = (beta_next - beta).norm();
        beta = beta_next;
        res.support = std::move(support);
        if (step < tau) {
            res.converged = true;
            break;
        }
    }
    // Report only genuinely nonzero support entries.
    res.support.erase(std::remove_if(res.support.begin(), res.support.end(),
                                     [&](int j) { return beta[j] == 0.0; }),
                      res.support.end());
    res.beta = beta;
    return res;
}

ScreeningResult screen_with_covariates(const Dataset& data, const ScreeningConfig& cfg) {
    data.validate();
    if (data.q() == 0) return cosamp(data.X, data.y, cfg);

    // Orthogonal projection onto the complement of span(Z).
    Eigen::HouseholderQR<MatrixXd> qr(data.Z);
    MatrixXd Q = qr.householderQ() * MatrixXd::Identity(data.n(), data.q());
    const VectorXd y_res = data.y - Q * (Q.transpose() * data.y);
    MatrixXd X_res = data.X - Q * (Q.transpose() * data.X);
    return cosamp(X_res, y_res, cfg);
}

}  // namespace l0fusion
