#include "l0fusion/solver.hpp"

#include "l0fusion/numerics.hpp"
#include "l0fusion/warmstart.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace l0fusion {

const char* to_string(Termination t) {
    switch (t) {
        case Termination::optimal: return "optimal";
        case Termination::gap_reached: return "gap_reached";
        case Termination::node_limit: return "node_limit";
        case Termination::time_limit: return "time_limit";
    }
    return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

struct Node {
    std::vector<signed char> labels;  // per block; -1 = unassigned
    int used = 0;                     // groups opened so far
    int nonzero = 0;                  // features assigned a nonzero label
    int unassigned = 0;
    double bound = 0.0;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const { return a.bound > b.bound; }
};

// Shared per-solve state: block-level Gram matrix and link structure.
struct Workspace {
    const Dataset& data;
    int B = 0;  // number of must-link blocks
    std::vector<std::vector<int>> block_members;     // block -> feature indices
    std::vector<std::vector<char>> block_conflict;   // cannot-link at block level
    MatrixXd gram;    // (B+q) x (B+q), block columns then Z columns
    VectorXd wy;      // (B+q), [block col, Z col]^T y
    double yy = 0.0;
    double slack = 0.0;

    explicit Workspace(const Dataset& d) : data(d) {}
};

// Least squares value through the Gram matrix for a set of column groups,
// each group being a sum of workspace columns. The value is exact for the
// computed coefficients, hence always >= the true minimum.
double gram_rss(const Workspace& ws, const std::vector<std::vector<int>>& cols,
                VectorXd* coef_out) {
    const int m = static_cast<int>(cols.size());
    if (m == 0) {
        if (coef_out) coef_out->resize(0);
        return ws.yy;
    }
    MatrixXd M(m, m);
    VectorXd b(m);
    for (int a = 0; a < m; ++a) {
        double ba = 0.0;
        for (int i : cols[static_cast<size_t>(a)]) ba += ws.wy[i];
        b[a] = ba;
        for (int c = a; c < m; ++c) {
            double g = 0.0;
            for (int i : cols[static_cast<size_t>(a)])
                for (int j : cols[static_cast<size_t>(c)]) g += ws.gram(i, j);
            M(a, c) = g;
            M(c, a) = g;
        }
    }
    Eigen::LDLT<MatrixXd> ldlt(M);
    VectorXd x = ldlt.solve(b);
    if (!x.allFinite()) x.setZero();
    const double rss = ws.yy - 2.0 * b.dot(x) + x.dot(M * x);
    if (coef_out) *coef_out = std::move(x);
    return std::max(rss, 0.0);
}

// Relaxation bound: assigned groups collapsed, assigned zeros deleted,
// unassigned blocks kept as free columns.
double node_bound(const Workspace& ws, const Node& node) {
    std::vector<std::vector<int>> cols;
    cols.resize(static_cast<size_t>(node.used));
    for (int b = 0; b < ws.B; ++b) {
        const int lab = node.labels[static_cast<size_t>(b)];
        if (lab > 0) cols[static_cast<size_t>(lab - 1)].push_back(b);
        else if (lab < 0) cols.push_back({b});
    }
    // Drop groups that are still empty (opened labels are never empty, but
    // keep the guard cheapness of erase on the off chance).
    cols.erase(std::remove_if(cols.begin(), cols.end(),
                              [](const std::vector<int>& c) { return c.empty(); }),
               cols.end());
    for (int k = 0; k < ws.data.q(); ++k) cols.push_back({ws.B + k});
    return gram_rss(ws, cols, nullptr) - ws.slack;
}

// Unassigned block with the largest |column^T residual| where the residual
// comes from the fit on assigned groups and Z only.
int pick_branch_block(const Workspace& ws, const Node& node) {
    std::vector<std::vector<int>> cols(static_cast<size_t>(node.used));
    for (int b = 0; b < ws.B; ++b) {
        const int lab = node.labels[static_cast<size_t>(b)];
        if (lab > 0) cols[static_cast<size_t>(lab - 1)].push_back(b);
    }
    cols.erase(std::remove_if(cols.begin(), cols.end(),
                              [](const std::vector<int>& c) { return c.empty(); }),
               cols.end());
    for (int k = 0; k < ws.data.q(); ++k) cols.push_back({ws.B + k});

    VectorXd coef;
    gram_rss(ws, cols, &coef);
    // z = expanded coefficient vector over workspace columns.
    VectorXd z = VectorXd::Zero(ws.gram.rows());
    for (size_t a = 0; a < cols.size(); ++a)
        for (int i : cols[a]) z[i] = coef[static_cast<Eigen::Index>(a)];
    const VectorXd corr = ws.wy - ws.gram * z;

    int best = -1;
    double best_abs = -1.0;
    for (int b = 0; b < ws.B; ++b) {
        if (node.labels[static_cast<size_t>(b)] != -1) continue;
        const double a = std::abs(corr[b]);
        if (a > best_abs) {
            best_abs = a;
            best = b;
        }
    }
    return best;
}

bool link_conflict(const Workspace& ws, const Node& node, int block, int label) {
    for (int b = 0; b < ws.B; ++b) {
        if (b == block) continue;
        if (node.labels[static_cast<size_t>(b)] == label &&
            ws.block_conflict[static_cast<size_t>(block)][static_cast<size_t>(b)])
            return true;
    }
    return false;
}

VectorXi expand_labels(const Workspace& ws, const std::vector<signed char>& block_labels) {
    VectorXi labels = VectorXi::Zero(ws.data.p());
    for (int b = 0; b < ws.B; ++b)
        for (int j : ws.block_members[static_cast<size_t>(b)])
            labels[j] = block_labels[static_cast<size_t>(b)];
    return labels;
}

FusedParams params_from_scored(const Dataset& data, const VectorXi& labels,
                               const ScoredAssignment& scored) {
    VectorXd beta = VectorXd::Zero(data.p());
    // scored.gamma is indexed by occupied labels in ascending label order.
    std::vector<int> occupied;
    for (int j = 0; j < data.p(); ++j)
        if (labels[j] > 0) occupied.push_back(labels[j]);
    std::sort(occupied.begin(), occupied.end());
    occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());
    for (int j = 0; j < data.p(); ++j) {
        if (labels[j] == 0) continue;
        const auto it = std::lower_bound(occupied.begin(), occupied.end(), labels[j]);
        beta[j] = scored.gamma[static_cast<Eigen::Index>(it - occupied.begin())];
    }
    FusedParams fp = from_beta(beta);
    fp.alpha = scored.alpha;
    return fp;
}

bool incumbent_respects_links(const VectorXi& labels, const SolveOptions& opts) {
    for (const auto& [a, b] : opts.must_link)
        if (labels[a] != labels[b]) return false;
    for (const auto& [a, b] : opts.cannot_link)
        if (labels[a] == labels[b]) return false;
    return true;
}

std::string format_num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

ScoredAssignment score_assignment(const Dataset& data, const VectorXi& labels) {
    data.validate();
    if (labels.size() != data.p())
        throw std::invalid_argument("score_assignment: label length must be p");

    std::vector<int> occupied;
    for (int j = 0; j < data.p(); ++j) {
        if (labels[j] < 0) throw std::invalid_argument("score_assignment: negative label");
        if (labels[j] > 0) occupied.push_back(labels[j]);
    }
    std::sort(occupied.begin(), occupied.end());
    occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());

    const int k = static_cast<int>(occupied.size());
    MatrixXd A = MatrixXd::Zero(data.n(), k + data.q());
    for (int j = 0; j < data.p(); ++j) {
        if (labels[j] == 0) continue;
        const auto it = std::lower_bound(occupied.begin(), occupied.end(), labels[j]);
        A.col(static_cast<Eigen::Index>(it - occupied.begin())) += data.X.col(j);
    }
    if (data.q() > 0) A.rightCols(data.q()) = data.Z;

    ScoredAssignment out;
    const VectorXd coef = least_squares(A, data.y);
    out.objective = (data.y - A * coef).squaredNorm();
    out.gamma = k > 0 ? coef.head(k).eval() : VectorXd();
    out.alpha = data.q() > 0 ? coef.tail(data.q()).eval() : VectorXd();
    return out;
}

std::pair<FusedParams, SolverReport> solve_exact(const Dataset& data, const Budget& budget,
                                                 const SolveOptions& opts) {
    const auto t_start = std::chrono::steady_clock::now();
    data.validate();
    budget.validate(data.p());
    if (opts.gap_tol < 0.0) throw std::invalid_argument("solve_exact: gap_tol must be >= 0");

    const int p = data.p();
    const int q = data.q();
    const int K = budget.K;
    const int s = budget.s;

    auto check_index = [&](int j) {
        if (j < 0 || j >= p) throw std::invalid_argument("solve_exact: link index out of range");
    };
    for (const auto& [a, b] : opts.must_link) { check_index(a); check_index(b); }
    for (const auto& [a, b] : opts.cannot_link) { check_index(a); check_index(b); }

    // Must-link features collapse to blocks that are assigned as one unit.
    DisjointSets ds(p);
    for (const auto& [a, b] : opts.must_link) ds.unite(a, b);
    std::vector<int> block_of(static_cast<size_t>(p), -1);
    Workspace ws(data);
    for (int j = 0; j < p; ++j) {
        const int root = ds.find(j);
        if (block_of[static_cast<size_t>(root)] == -1) {
            block_of[static_cast<size_t>(root)] = ws.B++;
            ws.block_members.emplace_back();
        }
        block_of[static_cast<size_t>(j)] = block_of[static_cast<size_t>(root)];
        ws.block_members[static_cast<size_t>(block_of[static_cast<size_t>(j)])].push_back(j);
    }
    ws.block_conflict.assign(static_cast<size_t>(ws.B),
                             std::vector<char>(static_cast<size_t>(ws.B), 0));
    for (const auto& [a, b] : opts.cannot_link) {
        const int ba = block_of[static_cast<size_t>(a)];
        const int bb = block_of[static_cast<size_t>(b)];
        if (ba == bb)
            throw std::invalid_argument("solve_exact: pair is both must- and cannot-linked");
        ws.block_conflict[static_cast<size_t>(ba)][static_cast<size_t>(bb)] = 1;
        ws.block_conflict[static_cast<size_t>(bb)][static_cast<size_t>(ba)] = 1;
    }

    // Block-level Gram: block columns are member-column sums.
    MatrixXd cols(data.n(), ws.B + q);
    for (int b = 0; b < ws.B; ++b) {
        cols.col(b).setZero();
        for (int j : ws.block_members[static_cast<size_t>(b)]) cols.col(b) += data.X.col(j);
    }
    if (q > 0) cols.rightCols(q) = data.Z;
    ws.gram = cols.transpose() * cols;
    ws.wy = cols.transpose() * data.y;
    ws.yy = data.y.squaredNorm();
    ws.slack = 1e-9 * (1.0 + ws.yy);

    SolverReport report;
    double z_P = kInf;
    FusedParams incumbent;
    bool have_incumbent = false;

    if (opts.use_warm_start) {
        WarmStartConfig wcfg;
        auto [warm, trace] = warm_start(data, budget, wcfg);
        const VectorXi warm_labels = warm.labels;
        if (incumbent_respects_links(warm_labels, opts)) {
            incumbent = warm;
            z_P = objective(data, warm);
            have_incumbent = true;
        }
    }

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    Node root;
    root.labels.assign(static_cast<size_t>(ws.B), -1);
    root.unassigned = ws.B;
    root.bound = node_bound(ws, root);
    open.push(root);

    const double zero_cut = 1e-12 * ws.yy;
    double z_D = root.bound;
    auto prune_eps = [&]() { return 1e-9 * (1.0 + std::abs(z_P)); };
    auto elapsed = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    };
    auto gap_of = [&](double zp, double zd) {
        if (zp != 0.0) return std::abs(zp - zd) / std::abs(zp);
        return zd >= -1e-12 ? 0.0 : kInf;
    };

    Termination term = Termination::optimal;
    bool stopped = false;
    while (!open.empty()) {
        if (have_incumbent && z_P <= zero_cut) { z_D = z_P; break; }
        if (opts.node_limit && report.nodes_explored >= *opts.node_limit) {
            term = Termination::node_limit;
            stopped = true;
            break;
        }
        if (opts.time_limit && elapsed() >= *opts.time_limit) {
            term = Termination::time_limit;
            stopped = true;
            break;
        }

        Node node = open.top();
        open.pop();
        z_D = std::max(z_D, std::min(node.bound, z_P));
        if (have_incumbent && node.bound >= z_P - prune_eps()) {
            // Best-first: every open node is at least this bound.
            z_D = z_P;
            break;
        }
        if (have_incumbent && opts.gap_tol > 0.0 && gap_of(z_P, z_D) <= opts.gap_tol) {
            term = Termination::gap_reached;
            stopped = true;
            break;
        }
        ++report.nodes_explored;

        const int jb = pick_branch_block(ws, node);
        const int bsize = static_cast<int>(ws.block_members[static_cast<size_t>(jb)].size());
        const int max_label = std::min(node.used + 1, K);
        for (int lab = 0; lab <= max_label; ++lab) {
            if (lab > 0 && node.nonzero + bsize > s) continue;
            if (link_conflict(ws, node, jb, lab)) continue;

            Node child = node;
            child.labels[static_cast<size_t>(jb)] = static_cast<signed char>(lab);
            child.used = std::max(node.used, lab);
            child.nonzero = node.nonzero + (lab > 0 ? bsize : 0);
            child.unassigned = node.unassigned - 1;

            if (child.unassigned == 0) {
                const VectorXi labels = expand_labels(ws, child.labels);
                const ScoredAssignment scored = score_assignment(data, labels);
                if (!have_incumbent || scored.objective < z_P) {
                    FusedParams cand = params_from_scored(data, labels, scored);
                    check_feasible(cand, budget);
                    incumbent = std::move(cand);
                    z_P = scored.objective;
                    have_incumbent = true;
                }
            } else {
                child.bound = node_bound(ws, child);
                if (!have_incumbent || child.bound < z_P - prune_eps()) open.push(child);
            }
        }
    }

    if (!have_incumbent)
        throw std::runtime_error("solve_exact: no feasible assignment under the link constraints");

    if (!stopped) {
        term = Termination::optimal;
        if (open.empty()) z_D = z_P;
    } else if (!open.empty()) {
        z_D = std::max(z_D, std::min(open.top().bound, z_P));
    }
    z_D = std::min(z_D, z_P);

    report.incumbent_objective = z_P;
    report.lower_bound = z_D;
    report.mip_gap = gap_of(z_P, z_D);
    report.wall_time = elapsed();
    report.termination = term;
    return {incumbent, report};
}

double default_big_m(const Dataset& data) {
    double best = 0.0;
    for (int j = 0; j < data.p(); ++j) {
        const double nrm2 = data.X.col(j).squaredNorm();
        if (nrm2 <= 0.0) continue;
        best = std::max(best, std::abs(data.X.col(j).dot(data.y)) / nrm2);
    }
    return best > 0.0 ? 10.0 * best : 10.0;
}

std::string export_mio(const Dataset& data, const Budget& budget, double bigM, double delta) {
    data.validate();
    budget.validate(data.p());
    if (bigM <= 0.0) throw std::invalid_argument("export_mio: bigM must be > 0");
    if (delta <= 0.0) throw std::invalid_argument("export_mio: delta must be > 0");

    const int p = data.p();
    const int q = data.q();
    const int K = budget.K;
    const int n = data.n();

    // Continuous variables in order: beta_1..beta_p, gamma_1..gamma_K,
    // alpha_1..alpha_q. W stacks the corresponding design columns with zero
    // columns for gamma (gamma enters only through constraints).
    const int nv = p + K + q;
    MatrixXd W = MatrixXd::Zero(n, nv);
    W.leftCols(p) = data.X;
    if (q > 0) W.rightCols(q) = data.Z;
    const MatrixXd G = W.transpose() * W;
    const VectorXd lin = -2.0 * (W.transpose() * data.y);
    const double constant = data.y.squaredNorm();

    auto var_name = [&](int i) {
        if (i < p) return "beta_" + std::to_string(i + 1);
        if (i < p + K) return "gamma_" + std::to_string(i - p + 1);
        return "alpha_" + std::to_string(i - p - K + 1);
    };

    std::ostringstream os;
    os << "\\ sparse fused least squares, mixed integer quadratic form\n";
    os << "Minimize\n obj: ";
    bool first = true;
    for (int i = 0; i < nv; ++i) {
        if (lin[i] == 0.0) continue;
        os << (lin[i] < 0 ? (first ? "- " : "- ") : (first ? "" : "+ "))
           << format_num(std::abs(lin[i])) << " " << var_name(i) << " ";
        first = false;
    }
    if (constant != 0.0) {
        os << (first ? "" : "+ ") << format_num(constant) << " ";
        first = false;
    }
    os << "+ [ ";
    bool qfirst = true;
    for (int i = 0; i < nv; ++i) {
        for (int j = i; j < nv; ++j) {
            const double coef = (i == j) ? 2.0 * G(i, i) : 4.0 * G(i, j);
            if (coef == 0.0) continue;
            os << (coef < 0 ? "- " : (qfirst ? "" : "+ ")) << format_num(std::abs(coef)) << " "
               << var_name(i);
            if (i == j) os << " ^ 2 ";
            else os << " * " << var_name(j) << " ";
            qfirst = false;
        }
    }
    os << "] / 2\n";

    os << "Subject To\n";
    const std::string M = format_num(bigM);
    for (int j = 1; j <= p; ++j) {
        const std::string bj = "beta_" + std::to_string(j);
        // zero group: |beta_j| <= M (1 - w_j_0)
        os << " zlo_" << j << ": - " << bj << " + " << M << " w_" << j << "_0 <= " << M << "\n";
        os << " zhi_" << j << ": " << bj << " + " << M << " w_" << j << "_0 <= " << M << "\n";
        for (int k = 1; k <= K; ++k) {
            const std::string gk = "gamma_" + std::to_string(k);
            os << " mlo_" << j << "_" << k << ": - " << bj << " + " << gk << " + " << M << " w_"
               << j << "_" << k << " <= " << M << "\n";
            os << " mhi_" << j << "_" << k << ": " << bj << " - " << gk << " + " << M << " w_" << j
               << "_" << k << " <= " << M << "\n";
        }
    }
    for (int k = 1; k < K; ++k)
        os << " order_" << k << ": gamma_" << k << " - gamma_" << k + 1
           << " <= -" << format_num(delta) << "\n";
    for (int j = 1; j <= p; ++j) {
        os << " assign_" << j << ":";
        for (int k = 0; k <= K; ++k) os << " + w_" << j << "_" << k;
        os << " = 1\n";
    }
    os << " sparsity:";
    for (int j = 1; j <= p; ++j) os << " + w_" << j << "_0";
    os << " >= " << (p - budget.s) << "\n";

    os << "Bounds\n";
    for (int i = 0; i < nv; ++i) os << " " << var_name(i) << " free\n";
    os << "Binaries\n";
    for (int j = 1; j <= p; ++j)
        for (int k = 0; k <= K; ++k) os << " w_" << j << "_" << k << "\n";
    os << "End\n";
    return os.str();
}

}  // namespace l0fusion
