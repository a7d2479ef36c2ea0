// Serial reference vs OpenMP path for the two hot kernels.
// Arg 0 = Exec::serial, 1 = Exec::parallel.

#include <benchmark/benchmark.h>

#include "risfox/exact_stats.hpp"
#include "risfox/montecarlo.hpp"
#include "risfox/scenario.hpp"

using namespace risfox;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_TensorQuadrature(benchmark::State& st) {
    const auto pf = preset_fading(FadingPreset::FP1);
    const auto stat = CombinedSnrStat::make(RisEnsemble::identical(static_cast<std::size_t>(st.range(1)), pf.ris, pf.direct),
                                            budget(LinkGeometry{}, 20.0));
    foxh::QuadratureConfig q;
    q.exec = exec_of(st);
    for (auto _ : st) benchmark::DoNotOptimize(outage_exact(stat, 1.0, q).value);
}
BENCHMARK(BM_TensorQuadrature)->ArgsProduct({{0, 1}, {1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TensorQuadrature)->ArgsProduct({{0, 1}, {2}})->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_MonteCarloOutage(benchmark::State& st) {
    const auto pf = preset_fading(FadingPreset::FP1);
    SimPlan p;
    p.config = SystemConfig::identical(static_cast<std::size_t>(st.range(1)), pf.ris, pf.direct);
    p.n_trials = 200000;
    p.exec = exec_of(st);
    for (auto _ : st) benchmark::DoNotOptimize(estimate_outage(p, 1.0).mean);
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(p.n_trials));
}
BENCHMARK(BM_MonteCarloOutage)->ArgsProduct({{0, 1}, {1, 10, 50}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
