#include "l0fusion/simgen.hpp"

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace l0fusion {

void SimConfig::validate() const {
    if (n < 1 || p < 1 || q < 0) throw std::invalid_argument("SimConfig: bad dimensions");
    if (rho < 0.0 || rho >= 1.0) throw std::invalid_argument("SimConfig: rho must be in [0, 1)");
    if (sigma < 0.0) throw std::invalid_argument("SimConfig: sigma must be >= 0");
    if (group_sizes.size() != group_values.size())
        throw std::invalid_argument("SimConfig: group_sizes/group_values length mismatch");
    int total = 0;
    for (int sz : group_sizes) {
        if (sz < 1) throw std::invalid_argument("SimConfig: group size must be >= 1");
        total += sz;
    }
    if (total > p) throw std::invalid_argument("SimConfig: group sizes exceed p");
    std::set<double> vals(group_values.begin(), group_values.end());
    if (vals.size() != group_values.size() || vals.count(0.0))
        throw std::invalid_argument("SimConfig: group values must be distinct and nonzero");
    if (alpha_star.size() != 0 && alpha_star.size() != q)
        throw std::invalid_argument("SimConfig: alpha_star length must be q");
}

MatrixXd gen_design(int n, int p, double rho, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = std::sqrt(1.0 - rho * rho);
    MatrixXd X(n, p);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = normal(rng);
        for (int j = 1; j < p; ++j) X(i, j) = rho * X(i, j - 1) + scale * normal(rng);
    }
    return X;
}

VectorXd make_beta(int p, const std::vector<int>& group_sizes,
                   const std::vector<double>& group_values) {
    VectorXd beta = VectorXd::Zero(p);
    int pos = 0;
    for (size_t g = 0; g < group_sizes.size(); ++g)
        for (int i = 0; i < group_sizes[g]; ++i) beta[pos++] = group_values[g];
    return beta;
}

VectorXd gen_response(const MatrixXd& X, const MatrixXd& Z, const VectorXd& beta,
                      const VectorXd& alpha, double sigma, std::uint64_t seed) {
    VectorXd y = X * beta;
    if (Z.cols() > 0) y += Z * alpha;
    if (sigma > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (int i = 0; i < y.size(); ++i) y[i] += sigma * normal(rng);
    }
    return y;
}

Dataset gen_dataset(const SimConfig& cfg) {
    cfg.validate();
    Dataset data;
    data.X = gen_design(cfg.n, cfg.p, cfg.rho, cfg.seed);
    data.Z = cfg.q > 0 ? gen_design(cfg.n, cfg.q, 0.0, cfg.seed + 2) : MatrixXd(cfg.n, 0);
    const VectorXd beta = make_beta(cfg.p, cfg.group_sizes, cfg.group_values);
    const VectorXd alpha =
        cfg.alpha_star.size() == cfg.q ? cfg.alpha_star : VectorXd::Zero(cfg.q);
    data.y = gen_response(data.X, data.Z, beta, alpha, cfg.sigma, cfg.seed + 1);
    return data;
}

}  // namespace l0fusion
