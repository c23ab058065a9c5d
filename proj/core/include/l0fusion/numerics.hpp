#pragma once

#include "l0fusion/params.hpp"

namespace l0fusion {

/// Minimum-norm least squares minimizer of ||y - A b||_2^2.
/// Rank deficiency is handled by a column-pivoted orthogonal factorization;
/// m == 0 returns an empty vector.
VectorXd least_squares(const MatrixXd& A, const VectorXd& y);

/// Residual sum of squares of the minimum-norm least squares fit.
double least_squares_rss(const MatrixXd& A, const VectorXd& y);

/// Upper bound on the gradient Lipschitz constant of
/// g(theta) = ||y - X beta - Z alpha||^2, i.e. 2 * lambda_max(W^T W) with
/// W = [X Z], computed by power iteration with a deterministic start and
/// inflated by (1 + 1e-4). An all-zero W returns the floor 1e-12.
double lipschitz_bound(const MatrixXd& W);
double lipschitz_bound(const Dataset& data);

}  // namespace l0fusion
