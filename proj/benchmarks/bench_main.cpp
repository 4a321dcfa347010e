#include "cosinor/estimation.hpp"
#include "cosinor/inference.hpp"
#include "cosinor/kappa.hpp"
#include "cosinor/random.hpp"
#include "cosinor/simulation.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace cosinor;

namespace {

struct Panel {
    std::vector<double> x, y;
};

Panel make_panel(std::size_t n) {
    Rng rng(1);
    Panel p;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        p.x.push_back(wrap_to_two_pi(x + sample_wrapped_laplace(0.0, std::sqrt(0.3), rng)));
        p.y.push_back(6.0 + std::cos(x) + rng.normal(0.0, 0.5));
    }
    return p;
}

void BM_FitNaive(benchmark::State& state) {
    const auto p = make_panel(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fit_naive(p.x, p.y));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitNaive)->Arg(100)->Arg(1600)->Arg(100000);

void BM_FitCorrected(benchmark::State& state) {
    const auto p = make_panel(1600);
    const auto kappa = kappa_from_sample(std::vector<double>(p.x.begin(), p.x.begin() + 200), 11);
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fit_corrected(p.x, p.y, kappa, order));
}
BENCHMARK(BM_FitCorrected)->Arg(2)->Arg(11);

void BM_ScoreTest(benchmark::State& state) {
    const auto p = make_panel(1600);
    const auto kappa = kappa_from_sample(std::vector<double>(p.x.begin(), p.x.begin() + 200), 2);
    for (auto _ : state) benchmark::DoNotOptimize(score_test(p.x, p.y, kappa, 2));
}
BENCHMARK(BM_ScoreTest);

void BM_KappaFromSample(benchmark::State& state) {
    Rng rng(2);
    std::vector<double> xi(static_cast<std::size_t>(state.range(0)));
    for (double& v : xi) v = sample_wrapped_laplace(0.0, 0.5, rng);
    for (auto _ : state) benchmark::DoNotOptimize(kappa_from_sample(xi, 8));
}
BENCHMARK(BM_KappaFromSample)->Arg(50)->Arg(5000);

void BM_ScenarioTrial(benchmark::State& state) {
    const auto cfg = scenario_preset(static_cast<int>(state.range(0)), 1600, 1, 1);
    std::size_t t = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_trial(cfg, t++));
}
BENCHMARK(BM_ScenarioTrial)->DenseRange(1, 8);

}  // namespace

BENCHMARK_MAIN();
