#include "l0fusion/tuning.hpp"

#include "l0fusion/warmstart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace l0fusion {

void TuneConfig::validate() const {
    if (K_grid.empty() || s_grid.empty())
        throw std::invalid_argument("TuneConfig: grids must be nonempty");
    if (method == TuneMethod::cv && folds < 2)
        throw std::invalid_argument("TuneConfig: folds must be >= 2");
}

namespace {

double bic_score(const Dataset& data, const FusedParams& fit) {
    const double n = static_cast<double>(data.n());
    const double rss = objective(data, fit);
    const double keff = static_cast<double>(fit.num_groups() + data.q());
    return n * std::log(rss / n) + keff * std::log(n);
}

double cv_score(const Dataset& data, const Budget& budget, const TuneConfig& cfg,
                const FitFunction& fit) {
    const int n = data.n();
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(cfg.seed);
    std::shuffle(order.begin(), order.end(), rng);

    double total_sq = 0.0;
    int total_count = 0;
    for (int f = 0; f < cfg.folds; ++f) {
        std::vector<int> test, train;
        for (int i = 0; i < n; ++i)
            ((i % cfg.folds == f) ? test : train).push_back(order[static_cast<size_t>(i)]);
        if (test.empty() || train.empty()) continue;

        Dataset tr;
        tr.y.resize(static_cast<Eigen::Index>(train.size()));
        tr.X.resize(static_cast<Eigen::Index>(train.size()), data.p());
        tr.Z.resize(static_cast<Eigen::Index>(train.size()), data.q());
        for (size_t i = 0; i < train.size(); ++i) {
            tr.y[static_cast<Eigen::Index>(i)] = data.y[train[i]];
            tr.X.row(static_cast<Eigen::Index>(i)) = data.X.row(train[i]);
            if (data.q() > 0) tr.Z.row(static_cast<Eigen::Index>(i)) = data.Z.row(train[i]);
        }
        const FusedParams fp = fit(tr, budget);
        const VectorXd beta = to_beta(fp);
        for (int i : test) {
            double pred = data.X.row(i).dot(beta);
            if (data.q() > 0) pred += data.Z.row(i).dot(fp.alpha);
            const double e = data.y[i] - pred;
            total_sq += e * e;
            ++total_count;
        }
    }
    return total_sq / static_cast<double>(total_count);
}

}  // namespace

TuneResult tune(const Dataset& data, const TuneConfig& cfg, const FitFunction& fit) {
    data.validate();
    cfg.validate();

    TuneResult result;
    double best = std::numeric_limits<double>::infinity();
    bool any = false;

    std::vector<std::pair<int, int>> grid;
    for (int K : cfg.K_grid)
        for (int s : cfg.s_grid) grid.emplace_back(K, s);
    std::sort(grid.begin(), grid.end());

    for (const auto& [K, s] : grid) {
        Budget budget{K, s};
        budget.validate(data.p());
        double score;
        try {
            if (cfg.method == TuneMethod::bic) {
                score = bic_score(data, fit(data, budget));
            } else {
                score = cv_score(data, budget, cfg, fit);
            }
        } catch (const std::exception&) {
            continue;  // infeasible grid point
        }
        result.table.push_back({K, s, score});
        // Ascending grid order: strict improvement keeps the smallest (K, s).
        if (!any || score < best) {
            best = score;
            result.K = K;
            result.s = s;
            any = true;
        }
    }
    if (!any) throw std::runtime_error("tune: every grid point failed to fit");
    return result;
}

}  // namespace l0fusion
