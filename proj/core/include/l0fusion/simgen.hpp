#pragma once

#include "l0fusion/params.hpp"

#include <cstdint>
#include <vector>

namespace l0fusion {

/// One experimental design: AR(1) Gaussian features, blockwise grouped
/// coefficients, Gaussian noise. Deterministic given seed.
struct SimConfig {
    int n = 100;
    int p = 10;
    int q = 0;
    double rho = 0.0;                  // AR(1) correlation in [0, 1)
    std::vector<int> group_sizes;
    std::vector<double> group_values;  // pairwise distinct, nonzero
    double sigma = 1.0;
    std::uint64_t seed = 0;
    VectorXd alpha_star;               // optional, length q

    void validate() const;
};

/// n x p matrix with i.i.d. N(0, Sigma) rows, Sigma_ij = rho^|i-j|,
/// generated by the AR(1) recursion x_j = rho x_{j-1} + sqrt(1-rho^2) xi_j.
MatrixXd gen_design(int n, int p, double rho, std::uint64_t seed);

/// Blockwise coefficient vector: the first sum(group_sizes) entries filled
/// with the group values, remainder zero.
VectorXd make_beta(int p, const std::vector<int>& group_sizes,
                   const std::vector<double>& group_values);

/// y = X beta + Z alpha + sigma * N(0, I), seeded.
VectorXd gen_response(const MatrixXd& X, const MatrixXd& Z, const VectorXd& beta,
                      const VectorXd& alpha, double sigma, std::uint64_t seed);

/// Full dataset from a SimConfig; the response uses seed + 1.
Dataset gen_dataset(const SimConfig& cfg);

}  // namespace l0fusion
