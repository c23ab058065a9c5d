#pragma once

#include "l0fusion/params.hpp"

#include <vector>

namespace l0fusion {

/// CoSaMP configuration. Defaults for expansion size and threshold follow
/// l = ceil(pi/2) and tau = 1e-6 * (1 + ||y||_2) when left at 0.
struct ScreeningConfig {
    int pi = 1;            // projection (target support) size
    int l = 0;             // expansion size; 0 = ceil(pi/2)
    double tau = 0.0;      // convergence threshold; 0 = 1e-6 * (1 + ||y||)
    int max_iters = 200;
    VectorXd beta0;        // initial vector; empty = zero

    void validate(int p) const;
};

struct ScreeningResult {
    std::vector<int> support;  // ascending, size <= pi
    VectorXd beta;             // length p, zero off-support
    int iterations = 0;
    bool converged = false;
};

/// Compressive sampling matching pursuit on the squared-error loss
/// ||y - X beta||^2. Two hard-thresholding rounds per iteration: expand the
/// support by the l largest-magnitude gradient coordinates, refit by
/// minimum-norm least squares, contract to the pi largest refit coordinates,
/// refit again. Ties break toward the lowest index.
ScreeningResult cosamp(const MatrixXd& X, const VectorXd& y, const ScreeningConfig& cfg);

/// Residualizes y and each column of X against the column span of Z, then
/// runs cosamp on the residualized system. q == 0 reduces to cosamp.
ScreeningResult screen_with_covariates(const Dataset& data, const ScreeningConfig& cfg);

}  // namespace l0fusion
