#pragma once

#include <cstdint>
#include <vector>

#include "progmom/empirical.hpp"
#include "progmom/functions.hpp"
#include "progmom/predictor.hpp"
#include "progmom/primes.hpp"
#include "progmom/progression.hpp"

namespace progmom {

inline constexpr unsigned kMaxModelOrder = 8;

struct ModelEntry {
    std::uint64_t p = 2;
    double value = 0.0;  // f(p)
    double prob = 0.0;   // 1/p
};

// Sum of independent two-valued variables X_p = f(p) w.p. 1/p, else 0,
// over the selected prime set.
struct TwoValuedModel {
    std::vector<ModelEntry> entries;  // ascending p; zero-valued entries dropped
    ProgressionSpec spec;
    PrimeSumMode mode = PrimeSumMode::PaperProgression;
};

// Only the prime values f(p) enter; a non-strongly-additive f is modeled
// through its strongly additive companion.
TwoValuedModel build_model(const AdditiveFunction& f, const PrimeSet& primes,
                           const ProgressionSpec& spec, PrimeSumMode mode);

struct ModelMoments {
    double mean = 0.0;
    double variance = 0.0;             // exact: sum of f^2/p (1 - 1/p)
    double asymptotic_variance = 0.0;  // leading-order sum of f^2/p
    std::vector<double> central_moments;  // index u-2 for u = 2..max_order
    std::vector<double> cumulants;        // index u-2 for u = 2..max_order
    unsigned max_order = 2;
    bool monte_carlo = false;
    std::uint64_t trials = 0;
    double mean_se = 0.0;                    // jackknife, monte_carlo only
    std::vector<double> central_moment_se;   // jackknife, index u-2

    double central_moment(unsigned u) const { return central_moments.at(u - 2); }
};

// Exact moments of S_n: per-entry central moments from the two-point
// closed form, converted to cumulants, summed across independent entries,
// and converted back.
ModelMoments exact_moments(const TwoValuedModel& model, unsigned max_order);

struct SimulationResult {
    ModelMoments exact;
    ModelMoments sample;
    EmpiricalDistribution distribution;  // normalized by exact mean / sqrt(exact variance)
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<double> raw_samples;  // trial order
};

// trials independent draws of S_n, one Bernoulli per entry per trial,
// reproducible from (seed, trial index) alone; see rng.hpp for the
// stream-splitting rule.
SimulationResult simulate(const TwoValuedModel& model, std::uint64_t trials, std::uint64_t seed,
                          unsigned max_order = 4, unsigned threads = 0);

}  // namespace progmom
