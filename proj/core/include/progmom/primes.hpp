#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "progmom/errors.hpp"

namespace progmom {

inline constexpr std::uint64_t kDefaultSegmentSize = 1ull << 20;

// Ascending list of every prime <= bound.
struct PrimeSet {
    std::uint64_t bound = 0;
    std::vector<std::uint64_t> primes;

    std::size_t size() const { return primes.size(); }
};

// Smallest prime factor for every integer in [lo, hi]. spf(1) is the
// sentinel 0 ("no prime factor"), never 1.
struct SpfTable {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::vector<std::uint32_t> spf;

    bool contains(std::uint64_t m) const { return m >= lo && m <= hi; }
    std::uint32_t at(std::uint64_t m) const {
        if (!contains(m)) throw RangeError("spf lookup outside table range");
        return spf[m - lo];
    }

    static constexpr std::uint32_t kNoFactor = 0;
};

struct Factorization {
    std::uint64_t m = 1;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;  // (p, exponent), p ascending
};

// Segmented sieve. Working memory is bounded by segment_size, not n.
PrimeSet primes_up_to(std::uint64_t n, std::uint64_t segment_size = kDefaultSegmentSize);

// Subset with p == l (mod k); requires gcd(k, l) = 1. k = 1 returns the input.
PrimeSet primes_in_progression(const PrimeSet& ps, std::uint64_t k, std::uint64_t l);

// Maximum table span accepted by spf_table.
inline constexpr std::uint64_t kMaxSpfSpan = 1ull << 24;

SpfTable spf_table(std::uint64_t lo, std::uint64_t hi);

// Complete factorization of m. m must lie in the table range; quotients
// that fall outside it are resolved by trial division.
Factorization factorize(std::uint64_t m, const SpfTable& table);

// Deterministic trial division; for small auxiliary queries only.
bool is_prime_u64(std::uint64_t m);

// Binary PrimeSet cache: fixed header (magic, version, bound, count),
// LEB128-encoded prime gaps, FNV-1a checksum over the payload.
void save_prime_cache(const PrimeSet& ps, const std::string& path);
PrimeSet load_prime_cache(const std::string& path, std::uint64_t expected_bound);

}  // namespace progmom
