#pragma once

#include "l0fusion/params.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace l0fusion {

struct SolveOptions {
    bool use_warm_start = true;
    double gap_tol = 0.0;  // terminate once |z_P - z_D| / |z_P| <= gap_tol
    std::optional<long> node_limit;
    std::optional<double> time_limit;  // seconds
    std::vector<std::pair<int, int>> must_link;
    std::vector<std::pair<int, int>> cannot_link;
};

enum class Termination { optimal, gap_reached, node_limit, time_limit };

const char* to_string(Termination t);

struct SolverReport {
    double incumbent_objective = 0.0;  // z_P
    double lower_bound = 0.0;          // z_D
    double mip_gap = 0.0;
    long nodes_explored = 0;
    double wall_time = 0.0;
    Termination termination = Termination::optimal;
};

/// Exact global minimization of the sparse fused least squares problem by
/// best-first branch-and-bound over feature label assignments. Node lower
/// bounds come from a relaxation that keeps assigned groups collapsed,
/// drops assigned zeros, and leaves every unassigned feature as a free
/// column. Label symmetry is eliminated by opening new groups in branching
/// order. Must-link pairs share one label; cannot-link pairs always differ
/// (including the zero label).
std::pair<FusedParams, SolverReport> solve_exact(const Dataset& data, const Budget& budget,
                                                 const SolveOptions& opts = {});

struct ScoredAssignment {
    double objective = 0.0;
    VectorXd gamma;  // in assignment-group order, before canonical sorting
    VectorXd alpha;
};

/// Least squares on the groupwise column-summed design induced by a label
/// vector (entries in {0..K}), jointly with Z.
ScoredAssignment score_assignment(const Dataset& data, const VectorXi& labels);

/// Big-M scale heuristic: 10 * max_j |X_j^T y| / ||X_j||^2.
double default_big_m(const Dataset& data);

/// LP-format text of the mixed integer quadratic formulation: quadratic
/// objective, big-M linearization of the group-membership products, strict
/// group ordering via the margin delta, assignment and sparsity rows,
/// binaries w_j_k. Numbers carry 12 significant digits; lines end in LF.
std::string export_mio(const Dataset& data, const Budget& budget, double bigM, double delta);

}  // namespace l0fusion
