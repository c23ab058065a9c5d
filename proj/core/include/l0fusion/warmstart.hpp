#pragma once

#include "l0fusion/params.hpp"

#include <optional>
#include <vector>

namespace l0fusion {

/// Projected-gradient warm start configuration. L = 0 requests the automatic
/// step parameter 1.1 * lipschitz_bound(data); eps < 0 requests the default
/// 1e-10 * (1 + g(theta_0)).
struct WarmStartConfig {
    double L = 0.0;
    double eps = -1.0;
    int max_iters = 10000;
    std::optional<FusedParams> theta0;  // default: all-zero point
};

struct WarmStartIterate {
    double objective = 0.0;   // g(theta_m)
    double step_norm = 0.0;   // ||theta_m - theta_{m-1}||_2, 0 for the first record
    double rho = 0.0;         // min gap between distinct nonzero values when exactly K exist
    double tau = 0.0;         // min |nonzero value|, 0 when beta is all zero
};

struct WarmStartTrace {
    std::vector<WarmStartIterate> iterates;  // one record per visited theta_m
    double L = 0.0;
    double lipschitz = 0.0;  // the bound l used to validate L
};

/// Least squares objective g(theta) = ||y - X beta - Z alpha||^2.
double objective(const Dataset& data, const FusedParams& fp);

/// Iterates theta_{m+1} = project(theta_m - (1/L) grad g(theta_m)) until the
/// objective decrease drops to eps or max_iters is hit. Objectives along the
/// trace are nonincreasing. Throws if a user-supplied L does not exceed the
/// Lipschitz bound.
std::pair<FusedParams, WarmStartTrace> warm_start(const Dataset& data, const Budget& budget,
                                                  const WarmStartConfig& cfg);

/// First-order stationarity: theta reproduces itself under one projected
/// gradient step with step parameter L.
bool is_stationary(const Dataset& data, const Budget& budget, const FusedParams& fp, double L);

}  // namespace l0fusion
