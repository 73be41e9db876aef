#pragma once

#include <cstdint>

namespace progmom {

// SplitMix64 (Steele/Lea/Flood). Chosen as the named simulation generator:
// 64-bit state, seedable, trivially splittable into per-trial streams.
//
// Stream-splitting rule: trial t draws from the SplitMix64 sequence whose
// initial state is mix64(mix64(seed) + (t + 1) * GOLDEN). Every trial's
// stream is a pure function of (seed, t), so results do not depend on how
// trials are scheduled across workers.
class SplitMix64 {
public:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) {
        return SplitMix64(mix64(mix64(seed) + (trial + 1) * kGolden));
    }

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double prob) { return next_double() < prob; }

private:
    std::uint64_t state_;
};

}  // namespace progmom
