#include <benchmark/benchmark.h>

#include "progmom/empirical.hpp"

namespace {

void BM_EmpiricalMoments(benchmark::State& state) {
    auto f = progmom::builtin("omega");
    progmom::ProgressionSpec spec{1, 1, static_cast<std::uint64_t>(state.range(0))};
    progmom::EvalContext ctx;
    ctx.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        auto report = progmom::empirical_moments(f, spec, 4, ctx);
        benchmark::DoNotOptimize(report.mean);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_EmpiricalMoments)
    ->Args({1000000, 1})
    ->Args({1000000, 4})
    ->Args({10000000, 4})
    ->Unit(benchmark::kMillisecond);

}  // namespace
