#include "progmom/limitlaws.hpp"

#include <algorithm>
#include <cmath>

#include "progmom/summation.hpp"

namespace progmom {

double KolmogorovFunction::operator()(double u) const {
    const auto& p = params;
    if (u < p.A) return 0.0;
    if (u < 0.0) return p.mu * (1.0 - u * u / (p.A * p.A));
    if (u == 0.0) return 1.0 - p.nu;
    if (u <= p.C) return p.nu * u * u / (p.C * p.C) + 1.0 - p.nu;
    return 1.0;
}

double k_eval(const KolmogorovFunction& kf, double u) { return kf(u); }

ConditionProfile condition_profile(const AdditiveFunction& f, const ProgressionSpec& spec,
                                   PrimeSumMode mode, const PrimeSet& primes,
                                   std::vector<double> grid) {
    spec.validate();
    if (primes.bound < spec.n) throw RangeError("prime set does not cover n");

    std::vector<std::pair<double, double>> pairs;  // (f(p), f^2(p)/p)
    for (std::uint64_t p : primes.primes) {
        if (p > spec.n) break;
        bool selected = mode == PrimeSumMode::PaperProgression ? p % spec.k == spec.l % spec.k
                                                               : spec.k % p != 0;
        if (!selected) continue;
        double fp = f.on_prime(p);
        pairs.emplace_back(fp, fp * fp / static_cast<double>(p));
    }

    // D summed in descending p order, like the other prime sums.
    CompensatedSum d_acc;
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) d_acc.add(it->second);
    double variance = d_acc.value();
    if (!(variance > 0.0)) throw DegenerateDistributionError("condition_profile requires D(n) > 0");
    double sigma = std::sqrt(variance);

    std::sort(pairs.begin(), pairs.end());
    std::vector<double> fvals(pairs.size()), prefix(pairs.size());
    {
        CompensatedSum acc;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            fvals[i] = pairs[i].first;
            acc.add(pairs[i].second);
            prefix[i] = acc.value();
        }
    }

    ConditionProfile profile;
    if (grid.empty()) {
        double lo = fvals.front() / sigma - 0.1;
        double hi = fvals.back() / sigma + 0.1;
        constexpr int kPoints = 512;
        grid.reserve(kPoints);
        for (int i = 0; i < kPoints; ++i)
            grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (kPoints - 1));
    }
    profile.grid = std::move(grid);
    profile.variance = variance;
    profile.values.reserve(profile.grid.size());
    for (double u : profile.grid) {
        double threshold = u * sigma;
        auto idx = static_cast<std::size_t>(
            std::lower_bound(fvals.begin(), fvals.end(), threshold) - fvals.begin());
        profile.values.push_back(idx == 0 ? 0.0 : prefix[idx - 1] / variance);
    }
    return profile;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_distance(const EmpiricalDistribution& emp, const std::function<double(double)>& ref_cdf) {
    if (emp.size == 0) throw EmptyDomainError("ks_distance requires a nonempty sample");

    if (!emp.is_histogram) {
        double n = static_cast<double>(emp.size);
        double sup = 0.0;
        for (std::size_t i = 0; i < emp.samples.size(); ++i) {
            double r = ref_cdf(emp.samples[i]);
            double above = std::abs(r - static_cast<double>(i + 1) / n);
            double below = std::abs(r - static_cast<double>(i) / n);
            sup = std::max({sup, above, below});
        }
        return sup;
    }

    double n = static_cast<double>(emp.size);
    double sup = std::abs(ref_cdf(EmpiricalDistribution::kHistLo) -
                          static_cast<double>(emp.underflow) / n);
    std::uint64_t cum = emp.underflow;
    const double width = (EmpiricalDistribution::kHistHi - EmpiricalDistribution::kHistLo) /
                         EmpiricalDistribution::kHistBins;
    for (std::size_t b = 0; b < emp.counts.size(); ++b) {
        cum += emp.counts[b];
        double edge = EmpiricalDistribution::kHistLo + width * static_cast<double>(b + 1);
        sup = std::max(sup, std::abs(ref_cdf(edge) - static_cast<double>(cum) / n));
    }
    return sup + emp.binning_slack;
}

}  // namespace progmom
