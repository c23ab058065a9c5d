#pragma once

#include "l0fusion/params.hpp"

namespace l0fusion {

/// Euclidean projection target: c stacks the q unpenalized coordinates first,
/// then the p fusable coordinates.
struct ProjectionProblem {
    VectorXd c;
    int q = 0;
    int p = 0;
    Budget budget;

    void validate() const;
};

/// Projection of c onto the feasible set: at most budget.K distinct nonzero
/// values among the p fusable coordinates, at most budget.s of them nonzero.
/// The unpenalized part is copied through unchanged.
///
/// Dynamic program over the sorted fusable coordinates: the zeroed entries
/// form a contiguous block of the sorted vector, the kept prefix and suffix
/// are segmented into at most K groups maximizing sum(segment sum^2 / length).
/// Runs in O(K s^2 + p log p + q). Ties prefer fewer nonzero entries, then
/// fewer groups.
FusedParams project(const ProjectionProblem& prob);

/// Exhaustive oracle: enumerates every assignment of the p coordinates to
/// {zero, group 1..K}, scores each by per-group means, and returns the global
/// optimum. Guarded to p <= 10.
FusedParams project_bruteforce(const ProjectionProblem& prob);

/// Stacked parameter vector [alpha; beta] matching the layout of c.
VectorXd theta_vector(const FusedParams& fp);

/// Squared distance ||theta(fp) - c||^2.
double projection_cost(const FusedParams& fp, const ProjectionProblem& prob);

}  // namespace l0fusion
