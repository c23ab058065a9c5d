#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "l0fusion/numerics.hpp"
#include "l0fusion/warmstart.hpp"
#include "test_util.hpp"

#include <random>

using namespace l0fusion;

TEST_CASE("descent contracts hold along random traces") {
    std::mt19937 rng(41);
    for (int rep = 0; rep < 25; ++rep) {
        CAPTURE(rep);
        const Dataset data = test_util::random_dataset(rng, 30, 6, 1, 0.5);
        const Budget budget{2, 4};
        auto [fp, trace] = warm_start(data, budget, {});
        REQUIRE(trace.iterates.size() >= 2);
        CHECK(trace.L > trace.lipschitz);
        const double margin = (trace.L - trace.lipschitz) / 2.0;
        double sum_steps = 0.0;
        for (size_t m = 0; m + 1 < trace.iterates.size(); ++m) {
            const double gm = trace.iterates[m].objective;
            const double gnext = trace.iterates[m + 1].objective;
            const double step2 = trace.iterates[m + 1].step_norm * trace.iterates[m + 1].step_norm;
            CHECK(gnext <= gm + 1e-12 * (1.0 + gm));  // monotone
            CHECK(gm - gnext >= margin * step2 - 1e-7 * (1.0 + gm));
            sum_steps += step2;
        }
        // Telescoped rate: total squared movement bounded by the total drop.
        const double g1 = trace.iterates.front().objective;
        const double gM = trace.iterates.back().objective;
        CHECK(sum_steps <= 2.0 * (g1 - gM) / (trace.L - trace.lipschitz) + 1e-7 * (1.0 + g1));
        // Min-step rate at every prefix.
        double min_step = std::numeric_limits<double>::infinity();
        for (size_t M = 1; M < trace.iterates.size(); ++M) {
            const double s2 = trace.iterates[M].step_norm * trace.iterates[M].step_norm;
            min_step = std::min(min_step, s2);
            const double bound = 2.0 * (g1 - trace.iterates[M].objective) /
                                 (static_cast<double>(M) * (trace.L - trace.lipschitz));
            CHECK(min_step <= bound + 1e-7 * (1.0 + g1));
        }
        CHECK(is_stationary(data, budget, fp, trace.L));
        check_feasible(fp, budget);
    }
}

TEST_CASE("objective helper equals the residual norm") {
    std::mt19937 rng(3);
    const Dataset data = test_util::random_dataset(rng, 15, 4, 2, 0.2);
    FusedParams fp;
    fp.labels = VectorXi(4);
    fp.labels << 1, 0, 2, 1;
    fp.gamma = VectorXd(2);
    fp.gamma << -0.5, 2.0;
    fp.alpha = VectorXd(2);
    fp.alpha << 1.0, -1.0;
    const VectorXd r = data.y - data.X * to_beta(fp) - data.Z * fp.alpha;
    CHECK(objective(data, fp) == doctest::Approx(r.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("invalid step parameter throws") {
    std::mt19937 rng(9);
    const Dataset data = test_util::random_dataset(rng, 20, 5, 0, 0.5);
    WarmStartConfig cfg;
    cfg.L = 0.5 * lipschitz_bound(data);
    CHECK_THROWS_AS(warm_start(data, Budget{2, 3}, cfg), std::invalid_argument);
}

TEST_CASE("a supplied starting point seeds the trace") {
    std::mt19937 rng(13);
    const Dataset data = test_util::random_dataset(rng, 25, 5, 0, 0.5);
    FusedParams start;
    start.labels = VectorXi::Zero(5);
    start.labels[2] = 1;
    start.gamma = VectorXd(1);
    start.gamma << 0.7;
    start.alpha = VectorXd(0);
    WarmStartConfig cfg;
    cfg.theta0 = start;
    auto [fp, trace] = warm_start(data, Budget{2, 3}, cfg);
    CHECK(trace.iterates.front().objective ==
          doctest::Approx(objective(data, start)).epsilon(1e-12));
    CHECK(objective(data, fp) <= objective(data, start) + 1e-12);
}

TEST_CASE("diagnostics report value gaps and magnitudes") {
    std::mt19937 rng(17);
    const Dataset data = test_util::random_dataset(rng, 40, 6, 0, 0.1);
    auto [fp, trace] = warm_start(data, Budget{2, 6}, {});
    const auto& last = trace.iterates.back();
    if (fp.num_groups() == 2)
        CHECK(last.rho == doctest::Approx(fp.gamma[1] - fp.gamma[0]).epsilon(1e-12));
    if (fp.num_nonzero() > 0) {
        double tau = std::numeric_limits<double>::infinity();
        for (int k = 0; k < fp.num_groups(); ++k) tau = std::min(tau, std::abs(fp.gamma[k]));
        CHECK(last.tau == doctest::Approx(tau).epsilon(1e-12));
    }
}
