// Acceptance suite: eight pass/fail criteria covering oracle equivalence,
// descent contracts, statistical reproduction, and the end-to-end pipeline.
// Each criterion prints exactly one "criterion N: PASS|FAIL" line; the exit
// status is the number of failed criteria.

#include "l0fusion/metrics.hpp"
#include "l0fusion/numerics.hpp"
#include "l0fusion/projection.hpp"
#include "l0fusion/screening.hpp"
#include "l0fusion/simgen.hpp"
#include "l0fusion/solver.hpp"
#include "l0fusion/tuning.hpp"
#include "l0fusion/warmstart.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace l0fusion;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void report(int id, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s (%s)\n", id, pass ? "PASS" : "FAIL", detail.c_str());
}

// --- 1. projection oracle equivalence --------------------------------------

bool criterion1() {
    Timer timer;
    std::mt19937 rng(10001);
    std::normal_distribution<double> gauss(0.0, 2.0);
    int bad = 0;
    for (int rep = 0; rep < 500; ++rep) {
        ProjectionProblem prob;
        std::uniform_int_distribution<int> pdist(1, 8), qdist(0, 2);
        prob.p = pdist(rng);
        prob.q = qdist(rng);
        std::uniform_int_distribution<int> Kdist(1, 3), sdist(0, prob.p);
        prob.budget.K = Kdist(rng);
        prob.budget.s = sdist(rng);
        prob.c.resize(prob.q + prob.p);
        for (int i = 0; i < prob.c.size(); ++i) prob.c[i] = gauss(rng);
        std::bernoulli_distribution tie(0.15);
        for (int i = prob.q + 1; i < prob.c.size(); ++i)
            if (tie(rng)) prob.c[i] = prob.c[i - 1];

        const double cd = projection_cost(project(prob), prob);
        const double cb = projection_cost(project_bruteforce(prob), prob);
        if (std::abs(cd - cb) > 1e-9) ++bad;
    }
    const double elapsed = timer.seconds();
    std::ostringstream d;
    d << "500 instances, " << bad << " mismatches, " << elapsed << " s";
    return bad == 0 && elapsed < 30.0 ? (report(1, true, d.str()), true)
                                      : (report(1, false, d.str()), false);
}

// --- 2 + 3. exact solver vs enumeration, warm-start contracts --------------

struct SolverStudy {
    int solver_bad = 0;
    int contract_bad = 0;
    double elapsed = 0.0;
};

SolverStudy run_solver_study() {
    SolverStudy out;
    Timer timer;
    std::mt19937 rng(20002);
    for (int rep = 0; rep < 200; ++rep) {
        std::uniform_int_distribution<int> pdist(2, 7), qdist(0, 1);
        const int p = pdist(rng);
        const Dataset data = test_util::random_dataset(rng, 30, p, qdist(rng), 0.5);
        std::uniform_int_distribution<int> Kdist(1, 2), sdist(1, p);
        const Budget budget{Kdist(rng), sdist(rng)};

        auto [fp, rpt] = solve_exact(data, budget);
        const auto oracle = test_util::enumerate_best(data, budget);
        if (rpt.termination != Termination::optimal ||
            std::abs(rpt.incumbent_objective - oracle.objective) >
                1e-8 * (1.0 + std::abs(oracle.objective)))
            ++out.solver_bad;

        auto [wfp, trace] = warm_start(data, budget, {});
        bool ok = trace.L > trace.lipschitz && is_stationary(data, budget, wfp, trace.L);
        const double margin = (trace.L - trace.lipschitz) / 2.0;
        const double g1 = trace.iterates.front().objective;
        double sum_steps = 0.0, min_step = std::numeric_limits<double>::infinity();
        for (size_t m = 0; m + 1 < trace.iterates.size(); ++m) {
            const double gm = trace.iterates[m].objective;
            const double gn = trace.iterates[m + 1].objective;
            const double s2 = trace.iterates[m + 1].step_norm * trace.iterates[m + 1].step_norm;
            if (gn > gm + 1e-12 * (1.0 + gm)) ok = false;
            if (gm - gn < margin * s2 - 1e-7 * (1.0 + gm)) ok = false;
            sum_steps += s2;
            min_step = std::min(min_step, s2);
            const double M = static_cast<double>(m + 1);
            const double rate = 2.0 * (g1 - gn) / (M * (trace.L - trace.lipschitz));
            if (min_step > rate + 1e-7 * (1.0 + g1)) ok = false;
        }
        const double gM = trace.iterates.back().objective;
        if (sum_steps > 2.0 * (g1 - gM) / (trace.L - trace.lipschitz) + 1e-7 * (1.0 + g1))
            ok = false;
        if (!ok) ++out.contract_bad;
    }
    out.elapsed = timer.seconds();
    return out;
}

// --- 4. oracle reconstruction ---------------------------------------------

double reconstruction_rate(double sigma, int* failures) {
    int good = 0;
    for (int rep = 0; rep < 30; ++rep) {
        SimConfig cfg;
        cfg.n = 100;
        cfg.p = 12;
        cfg.sigma = sigma;
        cfg.seed = 40000 + static_cast<std::uint64_t>(rep);
        cfg.group_sizes = {4, 4, 4};
        cfg.group_values = {-1.0, 0.5, 1.5};
        const Dataset data = gen_dataset(cfg);
        const VectorXd beta_star = make_beta(cfg.p, cfg.group_sizes, cfg.group_values);

        auto [fit, rpt] = solve_exact(data, Budget{3, 12});
        const VectorXd beta_hat = to_beta(fit);
        bool ok = rpt.termination == Termination::optimal && same_grouping(beta_hat, beta_star);
        if (ok) {
            const FusedParams oracle = oracle_ls(data, grouping_of(beta_star));
            ok = (beta_hat - to_beta(oracle)).lpNorm<Eigen::Infinity>() <= 1e-8;
        }
        good += ok ? 1 : 0;
    }
    if (failures) *failures = 30 - good;
    return good / 30.0;
}

bool criterion4() {
    Timer timer;
    const double rate_lo = reconstruction_rate(0.3, nullptr);
    const double rate_hi = reconstruction_rate(0.6, nullptr);
    const double elapsed = timer.seconds();
    const bool pass = rate_lo >= 0.9 && rate_hi <= rate_lo + 1e-12 && elapsed < 600.0;
    std::ostringstream d;
    d << "rate " << rate_lo << " at sigma 0.3, " << rate_hi << " at 0.6, " << elapsed << " s";
    report(4, pass, d.str());
    return pass;
}

// --- 5. screening reproduction --------------------------------------------

std::vector<double> screening_tpps(double r, int reps) {
    const int p = 2000;
    const int s0 = 20;
    const int n = static_cast<int>(std::floor(2.0 * s0 * std::log(static_cast<double>(p))));
    std::vector<double> tpps;
    for (int rep = 0; rep < reps; ++rep) {
        SimConfig cfg;
        cfg.n = n;
        cfg.p = p;
        cfg.sigma = 0.75;  // keeps the weakest coefficient detectable at this scale
        cfg.seed = 50000 + static_cast<std::uint64_t>(rep);
        cfg.group_sizes = {5, 5, 5, 5};
        cfg.group_values = {-2 * r, -r, r, 2 * r};
        const Dataset data = gen_dataset(cfg);
        ScreeningConfig scfg;
        scfg.pi = 20;
        scfg.l = 10;
        const ScreeningResult res = cosamp(data.X, data.y, scfg);
        std::vector<int> truth(s0);
        std::iota(truth.begin(), truth.end(), 0);
        tpps.push_back(tpp(res.support, truth));
    }
    return tpps;
}

bool criterion5() {
    Timer timer;
    const std::vector<double> strong = screening_tpps(0.3, 50);
    const std::vector<double> weak = screening_tpps(0.15, 50);
    const double elapsed = timer.seconds();
    int sure = 0;
    for (double t : strong) sure += t == 1.0;
    const double med_strong = median(strong);
    const double med_weak = median(weak);
    const bool pass = sure >= 45 && med_weak < med_strong && elapsed < 300.0;
    std::ostringstream d;
    d << "TPP=1 in " << sure << "/50 at r=0.3, medians " << med_strong << " vs " << med_weak
      << " at r=0.15, " << elapsed << " s";
    report(5, pass, d.str());
    return pass;
}

// --- 6. metrics ground truth ----------------------------------------------

int distance_by_enumeration(Grouping a, Grouping b) {
    if (a.groups.size() > b.groups.size()) std::swap(a, b);
    const int labeled_b = b.num_labeled();
    if (a.groups.empty()) return labeled_b;
    std::vector<int> perm(b.groups.size());
    std::iota(perm.begin(), perm.end(), 0);
    int best = 0;
    do {
        int overlap = 0;
        for (size_t i = 0; i < a.groups.size(); ++i)
            for (int v : a.groups[i]) {
                const auto& gb = b.groups[static_cast<size_t>(perm[i])];
                overlap += std::binary_search(gb.begin(), gb.end(), v) ? 1 : 0;
            }
        best = std::max(best, overlap);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return labeled_b - best;
}

bool criterion6() {
    bool pass = true;
    std::ostringstream d;

    PartitionPair same;
    same.p = 5;
    same.g1 = {{0, 2}, {1, 3, 4}};
    same.g2 = same.g1;
    if (nmi(same) != 1.0) {
        pass = false;
        d << "identical-partition NMI != 1; ";
    }

    PartitionPair four;
    four.p = 4;
    four.g1 = {{0, 1}, {2, 3}};
    four.g2 = {{0, 1, 2}, {3}};
    if (std::abs(nmi(four) - 0.3437110184854508) > 1e-6) {
        pass = false;
        d << "p=4 NMI off; ";
    }

    std::mt19937 rng(60006);
    int mism = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        std::uniform_int_distribution<int> pdist(1, 12), gdist(0, 5);
        const int p = pdist(rng);
        auto draw = [&]() {
            std::vector<std::vector<int>> buckets(6);
            for (int j = 0; j < p; ++j) buckets[static_cast<size_t>(gdist(rng))].push_back(j);
            Grouping g;
            for (size_t k = 1; k < buckets.size(); ++k)
                if (!buckets[k].empty()) g.groups.push_back(buckets[k]);
            g.canonicalize();
            return g;
        };
        const Grouping a = draw(), b = draw();
        if (grouping_distance(a, b) != distance_by_enumeration(a, b)) ++mism;
    }
    if (mism != 0) {
        pass = false;
        d << mism << " distance mismatches; ";
    }

    Dataset ident;
    ident.X = std::sqrt(2.0) * MatrixXd::Identity(2, 2);
    ident.Z = MatrixXd::Zero(2, 0);
    FusedParams truth;
    truth.labels = VectorXi(2);
    truth.labels << 1, 2;
    truth.gamma = VectorXd(2);
    truth.gamma << 1.0, 2.0;
    truth.alpha = VectorXd(0);
    ident.y = ident.X * to_beta(truth);
    const double cmin = grouping_sensitivity(ident, truth);
    if (std::abs(cmin - 0.5) > 1e-10) {
        pass = false;
        d << "c_min " << cmin << " != 0.5; ";
    }

    if (pass) d << "NMI, 1000 distance pairs, c_min all agree";
    report(6, pass, d.str());
    return pass;
}

// --- 7. warm vs cold under a time budget ----------------------------------

bool criterion7() {
    Timer timer;
    int incumbent_wins = 0, gap_wins = 0;
    for (int rep = 0; rep < 20; ++rep) {
        SimConfig cfg;
        cfg.n = 250;
        cfg.p = 30;
        cfg.sigma = 1.0;
        cfg.seed = 70000 + static_cast<std::uint64_t>(rep);
        cfg.rho = 0.3;
        cfg.group_sizes = {5, 5, 5, 5};
        cfg.group_values = {-1.0, -0.5, 0.5, 1.0};
        const Dataset data = gen_dataset(cfg);
        const Budget budget{4, 20};

        SolveOptions warm;
        warm.time_limit = 5.0;
        SolveOptions cold = warm;
        cold.use_warm_start = false;
        const auto rw = solve_exact(data, budget, warm).second;
        const auto rc = solve_exact(data, budget, cold).second;
        const double tol = 1e-9 * (1.0 + std::abs(rc.incumbent_objective));
        incumbent_wins += rw.incumbent_objective <= rc.incumbent_objective + tol;
        gap_wins += rw.mip_gap <= rc.mip_gap + 1e-9;
    }
    const double elapsed = timer.seconds();
    const bool pass = incumbent_wins >= 16 && gap_wins >= 16;
    std::ostringstream d;
    d << "incumbent <= cold in " << incumbent_wins << "/20, gap in " << gap_wins << "/20, "
      << elapsed << " s";
    report(7, pass, d.str());
    return pass;
}

// --- 8. end-to-end semi-simulation ----------------------------------------

bool criterion8() {
    Timer timer;
    const double r = 1.0;
    int fused_wins = 0;
    for (int rep = 0; rep < 30; ++rep) {
        SimConfig cfg;
        cfg.n = 397;
        cfg.p = 234;
        cfg.q = 2;
        cfg.rho = 0.4;
        cfg.sigma = 1.0;
        cfg.seed = 80000 + static_cast<std::uint64_t>(rep);
        cfg.group_sizes = {5, 5, 5, 5};
        cfg.group_values = {-2 * r, -r, r, 2 * r};
        cfg.alpha_star = VectorXd(2);
        cfg.alpha_star << 0.5, 1.0;
        const Dataset full = gen_dataset(cfg);

        const int n_train = 265;
        Dataset train, test;
        train.y = full.y.head(n_train);
        train.X = full.X.topRows(n_train);
        train.Z = full.Z.topRows(n_train);
        test.y = full.y.tail(cfg.n - n_train);
        test.X = full.X.bottomRows(cfg.n - n_train);
        test.Z = full.Z.bottomRows(cfg.n - n_train);

        ScreeningConfig scfg;
        scfg.pi = 20;
        const ScreeningResult sres = screen_with_covariates(train, scfg);

        Dataset reduced;
        reduced.y = train.y;
        reduced.Z = train.Z;
        reduced.X.resize(n_train, static_cast<Eigen::Index>(sres.support.size()));
        for (size_t c = 0; c < sres.support.size(); ++c)
            reduced.X.col(static_cast<Eigen::Index>(c)) = train.X.col(sres.support[c]);

        SolveOptions opts;
        opts.time_limit = 5.0;
        const FusedParams fit = solve_exact(reduced, Budget{4, reduced.p()}, opts).first;

        MatrixXd test_red(test.X.rows(), reduced.p());
        for (size_t c = 0; c < sres.support.size(); ++c)
            test_red.col(static_cast<Eigen::Index>(c)) = test.X.col(sres.support[c]);
        const VectorXd pred_fused = test_red * to_beta(fit) + test.Z * fit.alpha;
        const double mse_fused = (test.y - pred_fused).squaredNorm() / test.y.size();

        // Comparator: same screened support, plain least squares, no fusion.
        MatrixXd A(n_train, reduced.p() + 2);
        A << reduced.X, reduced.Z;
        const VectorXd coef = least_squares(A, reduced.y);
        MatrixXd At(test.y.size(), reduced.p() + 2);
        At << test_red, test.Z;
        const double mse_plain = (test.y - At * coef).squaredNorm() / test.y.size();

        fused_wins += mse_fused <= mse_plain;
    }
    const double elapsed = timer.seconds();
    const bool pass = fused_wins >= 24;
    std::ostringstream d;
    d << "fused MSE <= unfused in " << fused_wins << "/30, " << elapsed << " s";
    report(8, pass, d.str());
    return pass;
}

}  // namespace

int main() {
    int failed = 0;
    failed += criterion1() ? 0 : 1;

    const SolverStudy study = run_solver_study();
    {
        std::ostringstream d;
        d << "200 instances, " << study.solver_bad << " mismatches, " << study.elapsed << " s";
        const bool pass2 = study.solver_bad == 0 && study.elapsed < 300.0;
        report(2, pass2, d.str());
        failed += pass2 ? 0 : 1;

        std::ostringstream d3;
        d3 << study.contract_bad << " contract violations over 200 traces";
        const bool pass3 = study.contract_bad == 0;
        report(3, pass3, d3.str());
        failed += pass3 ? 0 : 1;
    }

    failed += criterion4() ? 0 : 1;
    failed += criterion5() ? 0 : 1;
    failed += criterion6() ? 0 : 1;
    failed += criterion7() ? 0 : 1;
    failed += criterion8() ? 0 : 1;

    std::printf("%d of 8 criteria failed\n", failed);
    return failed;
}
