#include <benchmark/benchmark.h>

#include "progmom/model.hpp"

namespace {

void BM_Simulate(benchmark::State& state) {
    auto f = progmom::builtin("omega");
    auto primes = progmom::primes_up_to(100000);
    progmom::ProgressionSpec spec{1, 1, 100000};
    auto model = progmom::build_model(f, primes, spec, progmom::PrimeSumMode::PaperProgression);
    auto trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto result = progmom::simulate(model, trials, 42, 4, static_cast<unsigned>(state.range(1)));
        benchmark::DoNotOptimize(result.sample.mean);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Simulate)->Args({10000, 1})->Args({10000, 4})->Unit(benchmark::kMillisecond);

}  // namespace
