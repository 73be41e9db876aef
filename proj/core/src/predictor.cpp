#include "progmom/predictor.hpp"

#include <cmath>

#include "progmom/summation.hpp"

namespace progmom {

namespace {

bool prime_selected(std::uint64_t p, const ProgressionSpec& spec, PrimeSumMode mode) {
    if (mode == PrimeSumMode::PaperProgression) return p % spec.k == spec.l % spec.k;
    return spec.k % p != 0;
}

}  // namespace

const char* to_string(PrimeSumMode mode) {
    return mode == PrimeSumMode::PaperProgression ? "paper_progression" : "divisor_density";
}

PredictedMoments moment_sums(const AdditiveFunction& f, const ProgressionSpec& spec,
                             PrimeSumMode mode, unsigned max_order, const PrimeSet& primes) {
    spec.validate();
    if (max_order < 1) throw OrderLimitError("moment_sums requires max_order >= 1");
    if (primes.bound < spec.n) throw RangeError("prime set does not cover n");

    PredictedMoments out;
    out.spec = spec;
    out.mode = mode;
    out.max_order = max_order;

    std::vector<CompensatedSum> acc(max_order);
    // Descending p adds the small terms first.
    for (auto it = primes.primes.rbegin(); it != primes.primes.rend(); ++it) {
        std::uint64_t p = *it;
        if (p > spec.n || !prime_selected(p, spec, mode)) continue;
        double fp = f.on_prime(p);
        double inv_p = 1.0 / static_cast<double>(p);
        double power = 1.0;
        for (unsigned u = 0; u < max_order; ++u) {
            power *= fp;
            acc[u].add(power * inv_p);
        }
    }
    out.sums.reserve(max_order);
    for (auto& a : acc) out.sums.push_back(a.value());
    out.B = std::sqrt(std::max(0.0, out.sums.size() >= 2 ? out.sums[1] : 0.0));
    return out;
}

MertensReport mertens_progression(const ProgressionSpec& spec, const PrimeSet& primes) {
    spec.validate();
    if (primes.bound < spec.n) throw RangeError("prime set does not cover n");

    MertensReport r;
    CompensatedSum acc;
    for (auto it = primes.primes.rbegin(); it != primes.primes.rend(); ++it) {
        std::uint64_t p = *it;
        if (p > spec.n) continue;
        if (p % spec.k == spec.l % spec.k) acc.add(1.0 / static_cast<double>(p));
    }
    r.exact = acc.value();
    r.leading = std::log(std::log(static_cast<double>(spec.n))) / static_cast<double>(euler_phi(spec.k));
    r.difference = r.exact - r.leading;
    return r;
}

BoundedMomentReport bounded_moment_check(const AdditiveFunction& f, const ProgressionSpec& spec,
                                         const PrimeSet& primes, double sup_bound,
                                         double tail_tolerance) {
    spec.validate();
    if (primes.bound < spec.n) throw RangeError("prime set does not cover n");

    BoundedMomentReport r;
    r.sup_bound = sup_bound;
    r.tail_tolerance = tail_tolerance;

    std::uint64_t n_low = spec.n / 10;
    CompensatedSum s2_full, s2_low;
    for (auto it = primes.primes.rbegin(); it != primes.primes.rend(); ++it) {
        std::uint64_t p = *it;
        if (p > spec.n || p % spec.k != spec.l % spec.k) continue;
        double fp = f.on_prime(p);
        double abs_fp = std::abs(fp);
        if (abs_fp >= r.sup_abs_fp) {  // ties resolve to the smallest prime
            r.sup_abs_fp = abs_fp;
            r.sup_at = p;
        }
        double term = fp * fp / static_cast<double>(p);
        s2_full.add(term);
        if (p <= n_low) s2_low.add(term);
    }
    r.tail_difference = s2_full.value() - s2_low.value();
    r.bounded_evidence = std::isfinite(r.sup_abs_fp) && r.sup_abs_fp <= sup_bound &&
                         r.tail_difference < tail_tolerance;
    return r;
}

double xp_central_moment(double fp, std::uint64_t p, unsigned u) {
    if (p < 2) throw ParameterError("xp_central_moment requires p >= 2");
    double q = 1.0 / static_cast<double>(p);
    double mean = fp * q;
    return (1.0 - q) * std::pow(-mean, static_cast<double>(u)) +
           q * std::pow(fp - mean, static_cast<double>(u));
}

}  // namespace progmom
