#include "l0fusion/projection.hpp"
#include "l0fusion/screening.hpp"
#include "l0fusion/simgen.hpp"
#include "l0fusion/solver.hpp"
#include "l0fusion/warmstart.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace l0fusion;

namespace {

ProjectionProblem make_projection(int p, int K, int s) {
    std::mt19937 rng(7);
    std::normal_distribution<double> g(0.0, 2.0);
    ProjectionProblem prob;
    prob.p = p;
    prob.q = 0;
    prob.budget = {K, s};
    prob.c.resize(p);
    for (int i = 0; i < p; ++i) prob.c[i] = g(rng);
    return prob;
}

void BM_projection(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const auto prob = make_projection(p, 4, p / 2);
    for (auto _ : state) benchmark::DoNotOptimize(project(prob));
}
BENCHMARK(BM_projection)->Arg(100)->Arg(1000)->Arg(10000);

void BM_cosamp(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    SimConfig cfg;
    cfg.n = 300;
    cfg.p = p;
    cfg.sigma = 0.5;
    cfg.seed = 3;
    cfg.group_sizes = {5, 5, 5, 5};
    cfg.group_values = {-0.6, -0.3, 0.3, 0.6};
    const Dataset data = gen_dataset(cfg);
    ScreeningConfig scfg;
    scfg.pi = 20;
    for (auto _ : state) benchmark::DoNotOptimize(cosamp(data.X, data.y, scfg));
}
BENCHMARK(BM_cosamp)->Arg(500)->Arg(2000)->Arg(8000);

void BM_warm_start(benchmark::State& state) {
    SimConfig cfg;
    cfg.n = 250;
    cfg.p = static_cast<int>(state.range(0));
    cfg.sigma = 1.0;
    cfg.seed = 11;
    cfg.group_sizes = {5, 5, 5, 5};
    cfg.group_values = {-1.0, -0.5, 0.5, 1.0};
    const Dataset data = gen_dataset(cfg);
    const Budget budget{4, 20};
    for (auto _ : state) benchmark::DoNotOptimize(warm_start(data, budget, {}));
}
BENCHMARK(BM_warm_start)->Arg(30)->Arg(60);

void BM_solve_exact(benchmark::State& state) {
    SimConfig cfg;
    cfg.n = 100;
    cfg.p = static_cast<int>(state.range(0));
    cfg.sigma = 0.3;
    cfg.seed = 13;
    cfg.group_sizes = {4, 4, 4};
    cfg.group_values = {-1.0, 0.5, 1.5};
    const Dataset data = gen_dataset(cfg);
    const Budget budget{3, cfg.p};
    for (auto _ : state) benchmark::DoNotOptimize(solve_exact(data, budget));
}
BENCHMARK(BM_solve_exact)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
