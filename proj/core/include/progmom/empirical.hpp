#pragma once

#include <cstdint>
#include <vector>

#include "progmom/functions.hpp"
#include "progmom/progression.hpp"

namespace progmom {

// Evaluation knobs shared by the progression sweeps. Chunk boundaries are
// fixed by chunk_members alone, so results are identical for every thread
// count.
struct EvalContext {
    std::uint64_t chunk_members = 1ull << 18;
    unsigned threads = 0;  // 0 = pick a default
    std::uint64_t sample_cap = 1ull << 22;
};

inline constexpr unsigned kMaxEmpiricalOrder = 12;

struct MomentReport {
    ProgressionSpec spec;
    std::uint64_t count = 0;
    double mean = 0.0;
    std::vector<double> central_moments;  // index u-2 holds order u
    unsigned max_order = 0;

    double central_moment(unsigned u) const { return central_moments.at(u - 2); }
    double variance() const { return central_moment(2); }
};

// Normalized sample (f(m) - A)/sqrt(D); kept exact up to sample_cap,
// above that reduced to a fixed histogram with outlier tail bins.
struct EmpiricalDistribution {
    bool is_histogram = false;
    std::uint64_t size = 0;

    std::vector<double> samples;  // sorted; exact representation

    static constexpr double kHistLo = -10.0;
    static constexpr double kHistHi = 10.0;
    static constexpr std::uint32_t kHistBins = 1u << 16;
    std::vector<std::uint64_t> counts;  // per bin
    std::uint64_t underflow = 0;
    std::uint64_t overflow = 0;
    double binning_slack = 0.0;  // max single-bin mass; bounds the CDF error

    // P(X <= x); for the histogram path, resolved at bin granularity.
    double cdf(double x) const;
};

// Exact two-pass statistics of f over the progression: pass 1 the mean,
// pass 2 centered powers, per-chunk compensated sums merged in chunk order.
MomentReport empirical_moments(const AdditiveFunction& f, const ProgressionSpec& spec,
                               unsigned max_order, const EvalContext& ctx = {});

EmpiricalDistribution normalized_cdf(const AdditiveFunction& f, const ProgressionSpec& spec,
                                     const EvalContext& ctx = {});

namespace detail {

// f-values of the progression members with index in [j_begin, j_end),
// computed by a progression-aware smallest-factor sweep. base_primes must
// cover sqrt of the largest member.
void progression_values(const AdditiveFunction& f, const ProgressionSpec& spec,
                        const std::vector<std::uint64_t>& base_primes, std::uint64_t j_begin,
                        std::uint64_t j_end, std::vector<double>& out);

std::vector<std::uint64_t> sweep_base_primes(std::uint64_t n);

}  // namespace detail

}  // namespace progmom
