#pragma once

#include <cstdint>
#include <numeric>

#include "progmom/errors.hpp"

namespace progmom {

// The progression m = l, l+k, l+2k, ..., m <= n, with gcd(k, l) = 1.
struct ProgressionSpec {
    std::uint64_t k = 1;
    std::uint64_t l = 1;
    std::uint64_t n = 0;

    void validate() const {
        if (k < 1) throw InvalidProgressionError("modulus k must be >= 1");
        if (l < 1 || l > k) throw InvalidProgressionError("residue l must satisfy 1 <= l <= k");
        if (std::gcd(k, l) != 1) throw InvalidProgressionError("gcd(k, l) must be 1");
        if (n < l) throw EmptyDomainError("progression is empty: n < l");
    }

    // Number of members l, l+k, ..., <= n.
    std::uint64_t count() const { return n >= l ? (n - l) / k + 1 : 0; }

    std::uint64_t member(std::uint64_t index) const { return l + index * k; }
};

inline std::uint64_t euler_phi(std::uint64_t k) {
    std::uint64_t result = k;
    for (std::uint64_t p = 2; p * p <= k; ++p) {
        if (k % p == 0) {
            result -= result / p;
            while (k % p == 0) k /= p;
        }
    }
    if (k > 1) result -= result / k;
    return result;
}

}  // namespace progmom
