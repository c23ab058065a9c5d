#pragma once

#include "l0fusion/params.hpp"

#include <vector>

namespace l0fusion {

/// Two partitions of the index universe [0, p). For NMI both must cover the
/// universe; clusters within a partition must be disjoint.
struct PartitionPair {
    std::vector<std::vector<int>> g1;
    std::vector<std::vector<int>> g2;
    int p = 0;
};

/// Normalized mutual information in [0, 1] with natural logarithms;
/// 0*log(0) terms count as 0. Two single-cluster partitions score 1.
double nmi(const PartitionPair& pair);

/// NMI between the partitions induced by two coefficient vectors, with all
/// zero coefficients forming one extra cluster (dropped when empty).
double nmi_with_zero_group(const VectorXd& beta_hat, const VectorXd& beta_star);

/// Minimum number of group labels to change to align two groupings: the
/// side with fewer groups is mapped injectively into the other, maximizing
/// total overlap via an optimal assignment.
int grouping_distance(const Grouping& a, const Grouping& b);
int grouping_distance(const VectorXd& beta, const VectorXd& beta_prime);

/// Minimum per-misgrouped-variable increase of MSE over all wrong groupings
/// at the truth's budget. Exhaustive; guarded to p <= 10 and at most 3 true
/// groups.
double grouping_sensitivity(const Dataset& data, const FusedParams& theta_star);

/// Least squares fit on the groupwise column-summed design defined by the
/// given (true) grouping, jointly with Z; zero outside the groups.
FusedParams oracle_ls(const Dataset& data, const Grouping& true_grouping);

/// True iff the nonzero-value partitions coincide as sets of index sets.
bool same_grouping(const VectorXd& beta_hat, const VectorXd& beta_star);

/// True positive proportion |shat ∩ s0| / |s0|; s0 must be nonempty.
double tpp(const std::vector<int>& shat, const std::vector<int>& s0);

/// Groupwise column-summed design matrix: one column per group, each the sum
/// of the member columns of X.
MatrixXd collapse_design(const MatrixXd& X, const Grouping& grouping);

}  // namespace l0fusion
