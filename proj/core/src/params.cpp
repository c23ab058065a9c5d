#include "l0fusion/params.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace l0fusion {

void Dataset::validate() const {
    if (n() < 1) throw std::invalid_argument("Dataset: n must be >= 1");
    if (p() < 1) throw std::invalid_argument("Dataset: p must be >= 1");
    if (X.rows() != n()) throw std::invalid_argument("Dataset: X row count != n");
    if (Z.cols() > 0 && Z.rows() != n())
        throw std::invalid_argument("Dataset: Z row count != n");
    if (!y.allFinite() || !X.allFinite() || (Z.size() > 0 && !Z.allFinite()))
        throw std::invalid_argument("Dataset: non-finite entries");
}

void Budget::validate(int p) const {
    if (K < 1) throw std::invalid_argument("Budget: K must be >= 1");
    if (s < 0 || s > p) throw std::invalid_argument("Budget: s must be in [0, p]");
}

int FusedParams::num_nonzero() const {
    int c = 0;
    for (int j = 0; j < labels.size(); ++j)
        if (labels[j] != 0) ++c;
    return c;
}

bool FusedParams::operator==(const FusedParams& other) const {
    return labels == other.labels && gamma == other.gamma && alpha == other.alpha;
}

int Grouping::num_labeled() const {
    int c = 0;
    for (const auto& g : groups) c += static_cast<int>(g.size());
    return c;
}

void Grouping::canonicalize() {
    for (auto& g : groups) std::sort(g.begin(), g.end());
    std::sort(groups.begin(), groups.end());
}

VectorXd to_beta(const FusedParams& fp) {
    VectorXd beta = VectorXd::Zero(fp.p());
    for (int j = 0; j < fp.p(); ++j) {
        const int lab = fp.labels[j];
        if (lab != 0) beta[j] = fp.gamma[lab - 1];
    }
    return beta;
}

FusedParams from_beta(const VectorXd& beta) {
    // Exact-equality grouping: values are compared bit-for-bit.
    std::map<double, std::vector<int>> by_value;
    for (int j = 0; j < beta.size(); ++j)
        if (beta[j] != 0.0) by_value[beta[j]].push_back(j);

    FusedParams fp;
    fp.labels = VectorXi::Zero(beta.size());
    fp.gamma.resize(static_cast<Eigen::Index>(by_value.size()));
    int k = 0;
    for (const auto& [value, idx] : by_value) {
        fp.gamma[k] = value;
        for (int j : idx) fp.labels[j] = k + 1;
        ++k;
    }
    return fp;
}

Grouping grouping_of(const VectorXd& beta) {
    std::map<double, std::vector<int>> by_value;
    for (int j = 0; j < beta.size(); ++j)
        if (beta[j] != 0.0) by_value[beta[j]].push_back(j);
    Grouping g;
    g.groups.reserve(by_value.size());
    for (auto& [value, idx] : by_value) g.groups.push_back(std::move(idx));
    g.canonicalize();
    return g;
}

FusedParams canonicalize(const FusedParams& fp) {
    FusedParams out = from_beta(to_beta(fp));
    out.alpha = fp.alpha;
    return out;
}

void check_feasible(const FusedParams& fp, const Budget& budget) {
    const int keff = fp.num_groups();
    if (keff > budget.K) throw std::invalid_argument("FusedParams: more than K groups");
    if (fp.num_nonzero() > budget.s)
        throw std::invalid_argument("FusedParams: more than s nonzero coefficients");
    for (int k = 0; k < keff; ++k) {
        if (fp.gamma[k] == 0.0) throw std::invalid_argument("FusedParams: zero gamma entry");
        if (k > 0 && !(fp.gamma[k - 1] < fp.gamma[k]))
            throw std::invalid_argument("FusedParams: gamma not strictly increasing");
    }
    std::vector<bool> seen(static_cast<size_t>(keff), false);
    for (int j = 0; j < fp.p(); ++j) {
        const int lab = fp.labels[j];
        if (lab < 0 || lab > keff)
            throw std::invalid_argument("FusedParams: label out of range");
        if (lab > 0) seen[static_cast<size_t>(lab - 1)] = true;
    }
    for (int k = 0; k < keff; ++k)
        if (!seen[static_cast<size_t>(k)])
            throw std::invalid_argument("FusedParams: empty group");
}

}  // namespace l0fusion
