#include "l0fusion/warmstart.hpp"

#include "l0fusion/numerics.hpp"
#include "l0fusion/projection.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace l0fusion {

namespace {

VectorXd gradient(const Dataset& data, const VectorXd& beta, const VectorXd& alpha,
                  VectorXd* residual_out) {
    VectorXd r = data.y - data.X * beta;
    if (data.q() > 0) r -= data.Z * alpha;
    VectorXd grad(data.q() + data.p());
    if (data.q() > 0) grad.head(data.q()) = -2.0 * (data.Z.transpose() * r);
    grad.tail(data.p()) = -2.0 * (data.X.transpose() * r);
    if (residual_out) *residual_out = std::move(r);
    return grad;
}

void fill_diagnostics(const FusedParams& fp, int K, WarmStartIterate* it) {
    const VectorXd beta = to_beta(fp);
    std::set<double> values;
    double tau = std::numeric_limits<double>::infinity();
    for (int j = 0; j < beta.size(); ++j) {
        if (beta[j] == 0.0) continue;
        values.insert(beta[j]);
        tau = std::min(tau, std::abs(beta[j]));
    }
    it->tau = values.empty() ? 0.0 : tau;
    it->rho = 0.0;
    if (static_cast<int>(values.size()) == K && values.size() >= 2) {
        double gap = std::numeric_limits<double>::infinity();
        double prev = std::numeric_limits<double>::quiet_NaN();
        for (double v : values) {
            if (!std::isnan(prev)) gap = std::min(gap, v - prev);
            prev = v;
        }
        it->rho = gap;
    }
}

}  // namespace

double objective(const Dataset& data, const FusedParams& fp) {
    VectorXd r = data.y - data.X * to_beta(fp);
    if (data.q() > 0) r -= data.Z * fp.alpha;
    return r.squaredNorm();
}

std::pair<FusedParams, WarmStartTrace> warm_start(const Dataset& data, const Budget& budget,
                                                  const WarmStartConfig& cfg) {
    data.validate();
    budget.validate(data.p());

    const double lip = lipschitz_bound(data);
    double L = cfg.L;
    if (L == 0.0) {
        L = 1.1 * lip;
    } else if (L <= lip) {
        throw std::invalid_argument("warm_start: L must exceed the Lipschitz bound");
    }

    FusedParams theta;
    if (cfg.theta0) {
        theta = canonicalize(*cfg.theta0);
        check_feasible(theta, budget);
        if (theta.alpha.size() != data.q())
            throw std::invalid_argument("warm_start: theta0 alpha length must be q");
    } else {
        theta.labels = VectorXi::Zero(data.p());
        theta.alpha = VectorXd::Zero(data.q());
    }

    double g = objective(data, theta);
    const double eps = cfg.eps >= 0.0 ? cfg.eps : 1e-10 * (1.0 + g);

    WarmStartTrace trace;
    trace.L = L;
    trace.lipschitz = lip;
    WarmStartIterate first;
    first.objective = g;
    fill_diagnostics(theta, budget.K, &first);
    trace.iterates.push_back(first);

    for (int m = 0; m < cfg.max_iters; ++m) {
        const VectorXd grad = gradient(data, to_beta(theta), theta.alpha, nullptr);
        ProjectionProblem prob;
        prob.q = data.q();
        prob.p = data.p();
        prob.budget = budget;
        prob.c = theta_vector(theta) - grad / L;
        FusedParams next = project(prob);

        const double g_next = objective(data, next);
        WarmStartIterate it;
        it.objective = g_next;
        it.step_norm = (theta_vector(next) - theta_vector(theta)).norm();
        fill_diagnostics(next, budget.K, &it);
        trace.iterates.push_back(it);

        const double decrease = g - g_next;
        theta = std::move(next);
        g = g_next;
        // The objective can flatten out while the iterate is still drifting
        // toward the fixed point, so a small step norm is required as well;
        // otherwise the returned point would fail the stationarity check.
        const double step_tol = 1e-9 * (1.0 + theta_vector(theta).cwiseAbs().maxCoeff());
        if (decrease <= eps && it.step_norm <= step_tol) break;
    }
    return {theta, trace};
}

bool is_stationary(const Dataset& data, const Budget& budget, const FusedParams& fp, double L) {
    const VectorXd grad = gradient(data, to_beta(fp), fp.alpha, nullptr);
    ProjectionProblem prob;
    prob.q = data.q();
    prob.p = data.p();
    prob.budget = budget;
    prob.c = theta_vector(fp) - grad / L;
    const FusedParams projected = project(prob);
    const VectorXd diff = theta_vector(projected) - theta_vector(fp);
    const double scale = 1.0 + theta_vector(fp).cwiseAbs().maxCoeff();
    return diff.cwiseAbs().maxCoeff() <= 1e-8 * scale;
}

}  // namespace l0fusion
