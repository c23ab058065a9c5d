#pragma once

#include <Eigen/Dense>
#include <vector>

namespace l0fusion {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::VectorXi;

/// Regression data: response y, p fusable feature columns X and q
/// always-kept covariate columns Z (q may be 0).
struct Dataset {
    VectorXd y;
    MatrixXd X;
    MatrixXd Z;

    int n() const { return static_cast<int>(y.size()); }
    int p() const { return static_cast<int>(X.cols()); }
    int q() const { return static_cast<int>(Z.cols()); }

    /// Throws std::invalid_argument on dimension mismatch or non-finite entries.
    void validate() const;
};

/// Budget (K, s): at most K distinct nonzero coefficient values,
/// at most s nonzero coefficients.
struct Budget {
    int K = 1;
    int s = 0;

    void validate(int p) const;
};

/// A feasible point of the constrained parameter space.
///
/// labels[j] in {0,...,K_eff}: 0 marks a zero coefficient, label k>0 maps
/// feature j to gamma[k-1]. gamma is strictly increasing with no zero entry
/// and every label 1..K_eff occurs at least once. alpha holds the
/// unpenalized coefficients.
struct FusedParams {
    VectorXi labels;
    VectorXd gamma;
    VectorXd alpha;

    int p() const { return static_cast<int>(labels.size()); }
    int num_groups() const { return static_cast<int>(gamma.size()); }
    int num_nonzero() const;

    bool operator==(const FusedParams& other) const;
};

/// Unlabeled partition of nonzero feature indices. Canonical form: each
/// group sorted ascending, groups ordered by smallest member.
struct Grouping {
    std::vector<std::vector<int>> groups;

    bool operator==(const Grouping& other) const { return groups == other.groups; }
    bool operator<(const Grouping& other) const { return groups < other.groups; }
    int num_labeled() const;

    void canonicalize();
};

/// Expand a FusedParams into the implied coefficient vector.
VectorXd to_beta(const FusedParams& fp);

/// Canonical labels/gamma from a raw coefficient vector. Distinct nonzero
/// values (exact floating equality) become groups sorted by value; zeros get
/// label 0. alpha is left empty.
FusedParams from_beta(const VectorXd& beta);

/// Partition of nonzero indices by exact coefficient value.
Grouping grouping_of(const VectorXd& beta);

/// Re-derive canonical labels/gamma from the implied beta, keeping alpha.
/// Merges groups whose values coincide and absorbs exact zeros into the
/// zero group.
FusedParams canonicalize(const FusedParams& fp);

/// Checks all FusedParams invariants against a budget; throws on violation.
void check_feasible(const FusedParams& fp, const Budget& budget);

}  // namespace l0fusion
