#include "l0fusion/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace l0fusion {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

FusedParams finish(const VectorXd& beta, const ProjectionProblem& prob) {
    FusedParams fp = from_beta(beta);
    fp.alpha = prob.c.head(prob.q);
    return fp;
}

}  // namespace

void ProjectionProblem::validate() const {
    if (p < 1) throw std::invalid_argument("ProjectionProblem: p must be >= 1");
    if (q < 0) throw std::invalid_argument("ProjectionProblem: q must be >= 0");
    if (c.size() != q + p)
        throw std::invalid_argument("ProjectionProblem: c length must be q + p");
    budget.validate(p);
}

FusedParams project(const ProjectionProblem& prob) {
    prob.validate();
    const int p = prob.p;
    const int K = prob.budget.K;
    const int s = prob.budget.s;

    if (s == 0) return finish(VectorXd::Zero(p), prob);

    // Sort the fusable part ascending, remembering original positions.
    std::vector<int> perm(static_cast<size_t>(p));
    std::iota(perm.begin(), perm.end(), 0);
    const VectorXd cb = prob.c.tail(p);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return cb[a] < cb[b]; });
    VectorXd v(p);
    for (int i = 0; i < p; ++i) v[i] = cb[perm[static_cast<size_t>(i)]];

    // Prefix sums: S[i] = v[0] + ... + v[i-1].
    VectorXd S = VectorXd::Zero(p + 1);
    for (int i = 0; i < p; ++i) S[i + 1] = S[i] + v[i];
    // Score of grouping values a..b (1-based inclusive) into one segment.
    auto seg = [&](int a, int b) {
        const double sum = S[b] - S[a - 1];
        return sum * sum / static_cast<double>(b - a + 1);
    };

    // Forward: f[l][k] = best score over the first l sorted values split into
    // exactly k segments; argf stores the start of the last segment.
    std::vector<std::vector<double>> f(static_cast<size_t>(s) + 1,
                                       std::vector<double>(static_cast<size_t>(K) + 1, kNegInf));
    std::vector<std::vector<int>> argf(static_cast<size_t>(s) + 1,
                                       std::vector<int>(static_cast<size_t>(K) + 1, -1));
    f[0][0] = 0.0;
    for (int l = 1; l <= s; ++l) {
        for (int k = 1; k <= std::min(K, l); ++k) {
            double best = kNegInf;
            int bi = -1;
            for (int i = k; i <= l; ++i) {
                if (f[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)] == kNegInf) continue;
                const double sc =
                    f[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)] + seg(i, l);
                if (sc > best) {
                    best = sc;
                    bi = i;
                }
            }
            f[static_cast<size_t>(l)][static_cast<size_t>(k)] = best;
            argf[static_cast<size_t>(l)][static_cast<size_t>(k)] = bi;
        }
    }

    // Backward: b[t][k] = best score over the suffix starting at position t
    // (1-based) split into exactly k segments; argb stores the end of the
    // first segment. Only suffixes of length <= s are reachable.
    std::vector<std::vector<double>> b(static_cast<size_t>(p) + 2,
                                       std::vector<double>(static_cast<size_t>(K) + 1, kNegInf));
    std::vector<std::vector<int>> argb(static_cast<size_t>(p) + 2,
                                       std::vector<int>(static_cast<size_t>(K) + 1, -1));
    b[static_cast<size_t>(p) + 1][0] = 0.0;
    for (int t = p; t >= std::max(1, p - s + 1); --t) {
        b[static_cast<size_t>(t)][0] = kNegInf;
        for (int k = 1; k <= std::min(K, p - t + 1); ++k) {
            double best = kNegInf;
            int bi = -1;
            for (int i = t; i <= p - (k - 1); ++i) {
                if (b[static_cast<size_t>(i + 1)][static_cast<size_t>(k - 1)] == kNegInf) continue;
                const double sc =
                    b[static_cast<size_t>(i + 1)][static_cast<size_t>(k - 1)] + seg(t, i);
                if (sc > best) {
                    best = sc;
                    bi = i;
                }
            }
            b[static_cast<size_t>(t)][static_cast<size_t>(k)] = best;
            argb[static_cast<size_t>(t)][static_cast<size_t>(k)] = bi;
        }
    }

    // bmax[t][kk]: best over k2 <= kk of b[t][k2], preferring smaller k2.
    std::vector<std::vector<double>> bmax(static_cast<size_t>(p) + 2,
                                          std::vector<double>(static_cast<size_t>(K) + 1, kNegInf));
    std::vector<std::vector<int>> bmaxk(static_cast<size_t>(p) + 2,
                                        std::vector<int>(static_cast<size_t>(K) + 1, -1));
    for (int t = 1; t <= p + 1; ++t) {
        double best = kNegInf;
        int bk = -1;
        for (int k = 0; k <= K; ++k) {
            // Strict-with-tolerance comparison so rounding noise from split
            // segments of equal values cannot override the smaller-k2 choice.
            const double bt = b[static_cast<size_t>(t)][static_cast<size_t>(k)];
            if (bt != kNegInf &&
                (best == kNegInf || bt > best + 1e-12 * (1.0 + std::abs(bt) + std::abs(best)))) {
                best = bt;
                bk = k;
            }
            bmax[static_cast<size_t>(t)][static_cast<size_t>(k)] = best;
            bmaxk[static_cast<size_t>(t)][static_cast<size_t>(k)] = bk;
        }
    }

    // Combine: keep l prefix values in k1 segments, rlen suffix values in k2
    // segments, zero the middle. Ties prefer fewer nonzero values, then fewer
    // segments.
    double best_score = kNegInf;
    int best_l = 0, best_r = 0, best_k1 = 0, best_k2 = 0;
    bool found = false;
    for (int l = 0; l <= std::min(s, p); ++l) {
        for (int rlen = 0; rlen <= std::min(s - l, p - l); ++rlen) {
            const int t = p - rlen + 1;
            for (int k1 = 0; k1 <= std::min(K, l); ++k1) {
                const double fs = f[static_cast<size_t>(l)][static_cast<size_t>(k1)];
                if (fs == kNegInf) continue;
                const int kk = K - k1;
                const double bs = bmax[static_cast<size_t>(t)][static_cast<size_t>(kk)];
                if (bs == kNegInf) continue;
                const int k2 = bmaxk[static_cast<size_t>(t)][static_cast<size_t>(kk)];
                const double sc = fs + bs;
                // Scores of equal-cost assignments can differ in the last few
                // ulps (segment sums round differently), so ties are detected
                // with a small relative tolerance before the preference for
                // fewer nonzero values and fewer segments applies.
                const double tol = 1e-12 * (1.0 + std::abs(sc) + std::abs(best_score));
                const bool better =
                    !found || sc > best_score + tol ||
                    (sc >= best_score - tol &&
                     (l + rlen < best_l + best_r ||
                      (l + rlen == best_l + best_r && k1 + k2 < best_k1 + best_k2)));
                if (better) {
                    best_score = sc;
                    best_l = l;
                    best_r = rlen;
                    best_k1 = k1;
                    best_k2 = k2;
                    found = true;
                }
            }
        }
    }

    // Reconstruct segment means over the sorted order.
    VectorXd beta_sorted = VectorXd::Zero(p);
    {
        int pos = best_l, k = best_k1;
        while (k > 0) {
            const int i = argf[static_cast<size_t>(pos)][static_cast<size_t>(k)];
            const double mean = (S[pos] - S[i - 1]) / static_cast<double>(pos - i + 1);
            for (int j = i; j <= pos; ++j) beta_sorted[j - 1] = mean;
            pos = i - 1;
            --k;
        }
    }
    {
        int pos = p - best_r + 1, k = best_k2;
        while (k > 0) {
            const int i = argb[static_cast<size_t>(pos)][static_cast<size_t>(k)];
            const double mean = (S[i] - S[pos - 1]) / static_cast<double>(i - pos + 1);
            for (int j = pos; j <= i; ++j) beta_sorted[j - 1] = mean;
            pos = i + 1;
            --k;
        }
    }

    VectorXd beta = VectorXd::Zero(p);
    for (int i = 0; i < p; ++i) beta[perm[static_cast<size_t>(i)]] = beta_sorted[i];
    return finish(beta, prob);
}

FusedParams project_bruteforce(const ProjectionProblem& prob) {
    prob.validate();
    const int p = prob.p;
    if (p > 10) throw std::invalid_argument("project_bruteforce: p must be <= 10");
    const int K = prob.budget.K;
    const int s = prob.budget.s;
    const VectorXd cb = prob.c.tail(p);

    std::vector<int> labels(static_cast<size_t>(p), 0);
    std::vector<int> best_labels;
    double best_cost = std::numeric_limits<double>::infinity();
    int best_nonzero = 0, best_groups = 0;

    VectorXd gsum(K + 1), gcnt(K + 1);
    for (;;) {
        int nonzero = 0;
        gsum.setZero();
        gcnt.setZero();
        for (int j = 0; j < p; ++j) {
            const int lab = labels[static_cast<size_t>(j)];
            if (lab != 0) ++nonzero;
            gsum[lab] += cb[j];
            gcnt[lab] += 1.0;
        }
        if (nonzero <= s) {
            double cost = 0.0;
            int groups = 0;
            for (int j = 0; j < p; ++j) {
                const int lab = labels[static_cast<size_t>(j)];
                const double mean = (lab == 0) ? 0.0 : gsum[lab] / gcnt[lab];
                cost += (cb[j] - mean) * (cb[j] - mean);
            }
            for (int k = 1; k <= K; ++k)
                if (gcnt[k] > 0) ++groups;
            // Same tolerance-aware tie detection as the DP path.
            const double tol = 1e-12 * (1.0 + cost + best_cost);
            const bool better =
                best_labels.empty() || cost < best_cost - tol ||
                (cost <= best_cost + tol &&
                 (nonzero < best_nonzero ||
                  (nonzero == best_nonzero && groups < best_groups)));
            if (better) {
                best_cost = cost;
                best_labels = labels;
                best_nonzero = nonzero;
                best_groups = groups;
            }
        }
        // Next label vector in lexicographic order (last index fastest).
        int j = p - 1;
        while (j >= 0 && labels[static_cast<size_t>(j)] == K) {
            labels[static_cast<size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
        ++labels[static_cast<size_t>(j)];
    }

    VectorXd gsum2 = VectorXd::Zero(K + 1), gcnt2 = VectorXd::Zero(K + 1);
    for (int j = 0; j < p; ++j) {
        gsum2[best_labels[static_cast<size_t>(j)]] += cb[j];
        gcnt2[best_labels[static_cast<size_t>(j)]] += 1.0;
    }
    VectorXd beta = VectorXd::Zero(p);
    for (int j = 0; j < p; ++j) {
        const int lab = best_labels[static_cast<size_t>(j)];
        if (lab != 0) beta[j] = gsum2[lab] / gcnt2[lab];
    }
    return finish(beta, prob);
}

VectorXd theta_vector(const FusedParams& fp) {
    const VectorXd beta = to_beta(fp);
    VectorXd theta(fp.alpha.size() + beta.size());
    theta << fp.alpha, beta;
    return theta;
}

double projection_cost(const FusedParams& fp, const ProjectionProblem& prob) {
    return (theta_vector(fp) - prob.c).squaredNorm();
}

}  // namespace l0fusion
