#include <benchmark/benchmark.h>

#include "progmom/primes.hpp"

namespace {

void BM_PrimesUpTo(benchmark::State& state) {
    auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto ps = progmom::primes_up_to(n);
        benchmark::DoNotOptimize(ps.primes.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_PrimesUpTo)->Arg(1000000)->Arg(10000000)->Arg(100000000)->Unit(benchmark::kMillisecond);

void BM_SpfTable(benchmark::State& state) {
    auto span = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto t = progmom::spf_table(1, span);
        benchmark::DoNotOptimize(t.spf.data());
    }
}
BENCHMARK(BM_SpfTable)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

}  // namespace
