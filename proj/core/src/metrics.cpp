#include "l0fusion/metrics.hpp"

#include "l0fusion/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

namespace l0fusion {

namespace {

// Max-weight assignment of each row to a distinct column (rows <= cols),
// Jonker-Volgenant style shortest augmenting paths on negated weights.
// Returns the maximum total weight.
long hungarian_max(const std::vector<std::vector<long>>& weight) {
    const int nrow = static_cast<int>(weight.size());
    if (nrow == 0) return 0;
    const int ncol = static_cast<int>(weight[0].size());
    const long INF = std::numeric_limits<long>::max() / 4;

    // Cost = maxw - weight, so minimizing cost maximizes weight.
    long maxw = 0;
    for (const auto& row : weight)
        for (long w : row) maxw = std::max(maxw, w);

    std::vector<long> u(static_cast<size_t>(nrow) + 1, 0), v(static_cast<size_t>(ncol) + 1, 0);
    std::vector<int> match(static_cast<size_t>(ncol) + 1, 0);  // col -> row (1-based)
    for (int i = 1; i <= nrow; ++i) {
        std::vector<long> minv(static_cast<size_t>(ncol) + 1, INF);
        std::vector<int> way(static_cast<size_t>(ncol) + 1, 0);
        std::vector<bool> used(static_cast<size_t>(ncol) + 1, false);
        int j0 = 0;
        match[0] = i;
        do {
            used[static_cast<size_t>(j0)] = true;
            const int i0 = match[static_cast<size_t>(j0)];
            long delta = INF;
            int j1 = -1;
            for (int j = 1; j <= ncol; ++j) {
                if (used[static_cast<size_t>(j)]) continue;
                const long cost = maxw - weight[static_cast<size_t>(i0 - 1)][static_cast<size_t>(j - 1)];
                const long cur = cost - u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
                if (cur < minv[static_cast<size_t>(j)]) {
                    minv[static_cast<size_t>(j)] = cur;
                    way[static_cast<size_t>(j)] = j0;
                }
                if (minv[static_cast<size_t>(j)] < delta) {
                    delta = minv[static_cast<size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= ncol; ++j) {
                if (used[static_cast<size_t>(j)]) {
                    u[static_cast<size_t>(match[static_cast<size_t>(j)])] += delta;
                    v[static_cast<size_t>(j)] -= delta;
                } else {
                    minv[static_cast<size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<size_t>(j0)];
            match[static_cast<size_t>(j0)] = match[static_cast<size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    long total = 0;
    for (int j = 1; j <= ncol; ++j)
        if (match[static_cast<size_t>(j)] != 0)
            total += weight[static_cast<size_t>(match[static_cast<size_t>(j)] - 1)][static_cast<size_t>(j - 1)];
    return total;
}

std::vector<std::vector<int>> partition_with_zero_cluster(const VectorXd& beta) {
    Grouping g = grouping_of(beta);
    std::vector<int> zeros;
    for (int j = 0; j < beta.size(); ++j)
        if (beta[j] == 0.0) zeros.push_back(j);
    auto clusters = g.groups;
    if (!zeros.empty()) clusters.push_back(std::move(zeros));
    return clusters;
}

}  // namespace

double nmi(const PartitionPair& pair) {
    const double p = static_cast<double>(pair.p);
    int covered1 = 0, covered2 = 0;
    for (const auto& g : pair.g1) covered1 += static_cast<int>(g.size());
    for (const auto& g : pair.g2) covered2 += static_cast<int>(g.size());
    if (covered1 != pair.p || covered2 != pair.p)
        throw std::invalid_argument("nmi: partitions must cover the index universe");

    auto entropy = [&](const std::vector<std::vector<int>>& g) {
        double h = 0.0;
        for (const auto& c : g) {
            if (c.empty()) continue;
            const double f = static_cast<double>(c.size()) / p;
            h -= f * std::log(f);
        }
        return h;
    };

    const double h1 = entropy(pair.g1);
    const double h2 = entropy(pair.g2);
    if (h1 == 0.0 && h2 == 0.0) return 1.0;  // identical single-cluster partitions

    double mi = 0.0;
    for (const auto& a : pair.g1) {
        std::set<int> sa(a.begin(), a.end());
        for (const auto& b : pair.g2) {
            int inter = 0;
            for (int j : b)
                if (sa.count(j)) ++inter;
            if (inter == 0) continue;
            const double pij = static_cast<double>(inter) / p;
            mi += pij * std::log(p * static_cast<double>(inter) /
                                 (static_cast<double>(a.size()) * static_cast<double>(b.size())));
        }
    }
    return mi / ((h1 + h2) / 2.0);
}

double nmi_with_zero_group(const VectorXd& beta_hat, const VectorXd& beta_star) {
    if (beta_hat.size() != beta_star.size())
        throw std::invalid_argument("nmi_with_zero_group: length mismatch");
    PartitionPair pair;
    pair.p = static_cast<int>(beta_hat.size());
    pair.g1 = partition_with_zero_cluster(beta_hat);
    pair.g2 = partition_with_zero_cluster(beta_star);
    return nmi(pair);
}

int grouping_distance(const Grouping& a, const Grouping& b) {
    const Grouping& small = a.groups.size() <= b.groups.size() ? a : b;
    const Grouping& large = a.groups.size() <= b.groups.size() ? b : a;

    const int m = static_cast<int>(small.groups.size());
    const int k = static_cast<int>(large.groups.size());
    if (m == 0) return large.num_labeled();

    std::vector<std::vector<long>> weight(static_cast<size_t>(m),
                                          std::vector<long>(static_cast<size_t>(k), 0));
    for (int i = 0; i < m; ++i) {
        std::set<int> si(small.groups[static_cast<size_t>(i)].begin(),
                         small.groups[static_cast<size_t>(i)].end());
        for (int j = 0; j < k; ++j) {
            long inter = 0;
            for (int idx : large.groups[static_cast<size_t>(j)])
                if (si.count(idx)) ++inter;
            weight[static_cast<size_t>(i)][static_cast<size_t>(j)] = inter;
        }
    }
    const long matched = hungarian_max(weight);
    return large.num_labeled() - static_cast<int>(matched);
}

int grouping_distance(const VectorXd& beta, const VectorXd& beta_prime) {
    return grouping_distance(grouping_of(beta), grouping_of(beta_prime));
}

double grouping_sensitivity(const Dataset& data, const FusedParams& theta_star) {
    data.validate();
    const int p = data.p();
    const int q = data.q();
    const VectorXd beta_star = to_beta(theta_star);
    const Grouping truth = grouping_of(beta_star);
    const int K0 = static_cast<int>(truth.groups.size());
    int s0 = 0;
    for (int j = 0; j < p; ++j)
        if (beta_star[j] != 0.0) ++s0;

    if (p > 10 || K0 > 3)
        throw std::invalid_argument("grouping_sensitivity: exhaustive regime requires p <= 10 and at most 3 groups");

    VectorXd mu = data.X * beta_star;
    if (q > 0) mu += data.Z * theta_star.alpha;

    double cmin = std::numeric_limits<double>::infinity();
    std::set<Grouping> seen;

    std::vector<int> labels(static_cast<size_t>(p), 0);
    for (;;) {
        int nonzero = 0;
        for (int lab : labels)
            if (lab != 0) ++nonzero;
        if (nonzero <= s0) {
            Grouping g;
            for (int k = 1; k <= K0; ++k) {
                std::vector<int> members;
                for (int j = 0; j < p; ++j)
                    if (labels[static_cast<size_t>(j)] == k) members.push_back(j);
                if (!members.empty()) g.groups.push_back(std::move(members));
            }
            g.canonicalize();
            if (!(g == truth) && seen.insert(g).second) {
                MatrixXd A(data.n(), static_cast<Eigen::Index>(g.groups.size()) + q);
                if (!g.groups.empty())
                    A.leftCols(static_cast<Eigen::Index>(g.groups.size())) =
                        collapse_design(data.X, g);
                if (q > 0) A.rightCols(q) = data.Z;
                const double rss = least_squares_rss(A, mu);
                const int d = grouping_distance(g, truth);
                const double c = rss / (static_cast<double>(data.n()) * std::max(d, 1));
                cmin = std::min(cmin, c);
            }
        }
        int j = p - 1;
        while (j >= 0 && labels[static_cast<size_t>(j)] == K0) {
            labels[static_cast<size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
        ++labels[static_cast<size_t>(j)];
    }
    return cmin;
}

MatrixXd collapse_design(const MatrixXd& X, const Grouping& grouping) {
    MatrixXd C = MatrixXd::Zero(X.rows(), static_cast<Eigen::Index>(grouping.groups.size()));
    for (size_t k = 0; k < grouping.groups.size(); ++k)
        for (int j : grouping.groups[k]) C.col(static_cast<Eigen::Index>(k)) += X.col(j);
    return C;
}

FusedParams oracle_ls(const Dataset& data, const Grouping& true_grouping) {
    data.validate();
    const int q = data.q();
    const int k = static_cast<int>(true_grouping.groups.size());
    for (const auto& g : true_grouping.groups)
        for (int j : g)
            if (j < 0 || j >= data.p())
                throw std::invalid_argument("oracle_ls: grouping index out of range");

    MatrixXd A(data.n(), k + q);
    if (k > 0) A.leftCols(k) = collapse_design(data.X, true_grouping);
    if (q > 0) A.rightCols(q) = data.Z;
    const VectorXd coef = least_squares(A, data.y);

    VectorXd beta = VectorXd::Zero(data.p());
    for (int g = 0; g < k; ++g)
        for (int j : true_grouping.groups[static_cast<size_t>(g)]) beta[j] = coef[g];
    FusedParams fp = from_beta(beta);
    fp.alpha = q > 0 ? coef.tail(q).eval() : VectorXd();
    return fp;
}

bool same_grouping(const VectorXd& beta_hat, const VectorXd& beta_star) {
    return grouping_of(beta_hat) == grouping_of(beta_star);
}

double tpp(const std::vector<int>& shat, const std::vector<int>& s0) {
    if (s0.empty()) throw std::invalid_argument("tpp: true support must be nonempty");
    std::set<int> truth(s0.begin(), s0.end());
    int inter = 0;
    for (int j : std::set<int>(shat.begin(), shat.end()))
        if (truth.count(j)) ++inter;
    return static_cast<double>(inter) / static_cast<double>(truth.size());
}

}  // namespace l0fusion
