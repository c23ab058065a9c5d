#pragma once

#include "l0fusion/params.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace l0fusion {

enum class TuneMethod { bic, cv };

struct TuneConfig {
    std::vector<int> K_grid;
    std::vector<int> s_grid;
    TuneMethod method = TuneMethod::bic;
    int folds = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Fits one budget on one dataset; the tuner supplies the data (full set or
/// a training fold).
using FitFunction = std::function<FusedParams(const Dataset&, const Budget&)>;

struct TuneScore {
    int K = 0;
    int s = 0;
    double score = 0.0;
};

struct TuneResult {
    int K = 0;
    int s = 0;
    std::vector<TuneScore> table;
};

/// Selects (K, s) over the grid. BIC scores n log(RSS/n) + (K_eff + q) log n
/// with K_eff the number of distinct nonzero fitted values; CV scores mean
/// held-out squared error over seeded folds. Ties go to the smaller (K, s)
/// lexicographically.
TuneResult tune(const Dataset& data, const TuneConfig& cfg, const FitFunction& fit);

}  // namespace l0fusion
