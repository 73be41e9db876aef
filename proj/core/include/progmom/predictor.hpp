#pragma once

#include <cstdint>
#include <vector>

#include "progmom/functions.hpp"
#include "progmom/primes.hpp"
#include "progmom/progression.hpp"

namespace progmom {

// Which primes enter the sums S_u = sum f^u(p)/p:
//   PaperProgression: p <= n with p == l (mod k)
//   DivisorDensity:   p <= n with p not dividing k (each such p divides a
//                     1/p fraction of progression members)
// The two coincide exactly at k = 1.
enum class PrimeSumMode { PaperProgression, DivisorDensity };

const char* to_string(PrimeSumMode mode);

struct PredictedMoments {
    ProgressionSpec spec;
    PrimeSumMode mode = PrimeSumMode::PaperProgression;
    std::vector<double> sums;  // sums[u-1] = S_u for u = 1..max_order
    double B = 0.0;            // sqrt(S_2)
    unsigned max_order = 0;
};

// Exact finite sums S_u over the selected prime set, compensated summation
// in descending p order.
PredictedMoments moment_sums(const AdditiveFunction& f, const ProgressionSpec& spec,
                             PrimeSumMode mode, unsigned max_order, const PrimeSet& primes);

struct MertensReport {
    double exact = 0.0;    // sum of 1/p over p <= n, p == l (mod k)
    double leading = 0.0;  // ln ln n / phi(k)
    double difference = 0.0;
};

MertensReport mertens_progression(const ProgressionSpec& spec, const PrimeSet& primes);

struct BoundedMomentReport {
    double sup_abs_fp = 0.0;       // sup |f(p)| over the selected primes
    std::uint64_t sup_at = 0;      // prime attaining the sup
    double tail_difference = 0.0;  // S_2(n) - S_2(n/10)
    double sup_bound = 0.0;        // configured bound the sup is tested against
    double tail_tolerance = 0.0;
    bool bounded_evidence = false;
};

// Finite-computation evidence for "sum f^2(p)/p converges and |f(p)| <= C":
// checks sup |f(p)| <= sup_bound and the partial-sum tail at n/10 vs n.
// Only the prime values f(p) enter.
BoundedMomentReport bounded_moment_check(const AdditiveFunction& f, const ProgressionSpec& spec,
                                         const PrimeSet& primes, double sup_bound = 16.0,
                                         double tail_tolerance = 1e-3);

// Exact central moment of the two-valued variable X_p (value fp with
// probability 1/p, else 0): E[(X_p - fp/p)^u].
double xp_central_moment(double fp, std::uint64_t p, unsigned u);

}  // namespace progmom
