#include "progmom/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "progmom/parallel.hpp"
#include "progmom/rng.hpp"
#include "progmom/summation.hpp"

namespace progmom {

namespace {

bool prime_selected(std::uint64_t p, const ProgressionSpec& spec, PrimeSumMode mode) {
    if (mode == PrimeSumMode::PaperProgression) return p % spec.k == spec.l % spec.k;
    return spec.k % p != 0;
}

// Pascal triangle up to the model order cap.
constexpr std::array<std::array<double, kMaxModelOrder + 1>, kMaxModelOrder + 1> make_binomials() {
    std::array<std::array<double, kMaxModelOrder + 1>, kMaxModelOrder + 1> c{};
    for (unsigned n = 0; n <= kMaxModelOrder; ++n) {
        c[n][0] = 1.0;
        for (unsigned k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0.0);
    }
    return c;
}

const auto kBinomial = make_binomials();

// kappa_u from central moments (kappa_1 of the centered variable is 0):
//   m_u = sum_{j=2..u} C(u-1, j-1) kappa_j m_{u-j}
void cumulants_from_central(const std::vector<double>& m, std::vector<double>& kappa) {
    unsigned top = static_cast<unsigned>(m.size()) - 1;  // m[0]=1, m[1]=0, m[u]
    kappa.assign(top + 1, 0.0);
    for (unsigned u = 2; u <= top; ++u) {
        double rest = 0.0;
        for (unsigned j = 2; j + 2 <= u; ++j) rest += kBinomial[u - 1][j - 1] * kappa[j] * m[u - j];
        kappa[u] = m[u] - rest;
    }
}

void central_from_cumulants(const std::vector<double>& kappa, std::vector<double>& m) {
    unsigned top = static_cast<unsigned>(kappa.size()) - 1;
    m.assign(top + 1, 0.0);
    m[0] = 1.0;
    for (unsigned u = 2; u <= top; ++u) {
        double sum = 0.0;
        for (unsigned j = 2; j <= u; ++j) sum += kBinomial[u - 1][j - 1] * kappa[j] * m[u - j];
        m[u] = sum;
    }
}

}  // namespace

TwoValuedModel build_model(const AdditiveFunction& f, const PrimeSet& primes,
                           const ProgressionSpec& spec, PrimeSumMode mode) {
    spec.validate();
    if (primes.bound < spec.n) throw RangeError("prime set does not cover n");
    TwoValuedModel model;
    model.spec = spec;
    model.mode = mode;
    for (std::uint64_t p : primes.primes) {
        if (p > spec.n || !prime_selected(p, spec, mode)) continue;
        double fp = f.on_prime(p);
        if (fp == 0.0) continue;  // contributes nothing to any moment
        model.entries.push_back({p, fp, 1.0 / static_cast<double>(p)});
    }
    return model;
}

ModelMoments exact_moments(const TwoValuedModel& model, unsigned max_order) {
    if (max_order < 2) throw OrderLimitError("exact_moments requires max_order >= 2");
    if (max_order > kMaxModelOrder) throw OrderLimitError("exact_moments order cap is 8");

    CompensatedSum mean_acc, asym_acc;
    std::vector<CompensatedSum> kappa_acc(max_order + 1);
    std::vector<double> m(max_order + 1), kappa;
    for (const auto& e : model.entries) {
        mean_acc.add(e.value * e.prob);
        asym_acc.add(e.value * e.value * e.prob);
        m[0] = 1.0;
        if (max_order >= 1) m[1] = 0.0;
        double q = e.prob;
        double mu = e.value * q;
        for (unsigned u = 2; u <= max_order; ++u)
            m[u] = (1.0 - q) * std::pow(-mu, static_cast<double>(u)) +
                   q * std::pow(e.value - mu, static_cast<double>(u));
        cumulants_from_central(m, kappa);
        for (unsigned u = 2; u <= max_order; ++u) kappa_acc[u].add(kappa[u]);
    }

    ModelMoments out;
    out.max_order = max_order;
    out.mean = mean_acc.value();
    out.asymptotic_variance = asym_acc.value();
    std::vector<double> total_kappa(max_order + 1, 0.0);
    for (unsigned u = 2; u <= max_order; ++u) total_kappa[u] = kappa_acc[u].value();
    std::vector<double> central;
    central_from_cumulants(total_kappa, central);
    out.variance = central[2];
    for (unsigned u = 2; u <= max_order; ++u) {
        out.central_moments.push_back(central[u]);
        out.cumulants.push_back(total_kappa[u]);
    }
    return out;
}

namespace {

// Delete-one jackknife for the mean and the sample central moments. Works
// on centered samples d_i = x_i - mean via their power sums s[r], so each
// delete-one statistic costs O(max_order).
void jackknife_errors(const std::vector<double>& samples, double mean, unsigned max_order,
                      ModelMoments& stats) {
    std::size_t n = samples.size();
    stats.central_moment_se.assign(max_order - 1, 0.0);
    if (n < 2) {
        stats.mean_se = 0.0;
        return;
    }
    std::vector<CompensatedSum> pow_acc(max_order + 1);
    for (double x : samples) {
        double d = x - mean;
        double pw = 1.0;
        for (unsigned r = 0; r <= max_order; ++r) {
            pow_acc[r].add(pw);
            pw *= d;
        }
    }
    std::vector<double> s(max_order + 1);
    for (unsigned r = 0; r <= max_order; ++r) s[r] = pow_acc[r].value();  // s[0] = n

    double nm1 = static_cast<double>(n - 1);
    auto se_of = [&](const std::vector<double>& theta) {
        CompensatedSum acc;
        for (double t : theta) acc.add(t);
        double avg = acc.value() / static_cast<double>(n);
        CompensatedSum sq;
        for (double t : theta) {
            double dv = t - avg;
            sq.add(dv * dv);
        }
        return std::sqrt(nm1 / static_cast<double>(n) * sq.value());
    };

    std::vector<double> theta(n);
    for (std::size_t i = 0; i < n; ++i) theta[i] = (s[1] - (samples[i] - mean)) / nm1;
    stats.mean_se = se_of(theta);

    for (unsigned u = 2; u <= max_order; ++u) {
        for (std::size_t i = 0; i < n; ++i) {
            double d = samples[i] - mean;
            double mu_i = (s[1] - d) / nm1;  // mean of the remaining centered values
            // sum_{j != i} (d_j - mu_i)^u expanded over the retained power sums
            double acc = 0.0;
            double dpow = 1.0;  // d^r
            for (unsigned r = 0; r <= u; ++r) {
                double sr_minus = s[r] - dpow;  // s[0] = n makes this n - 1 at r = 0
                acc += kBinomial[u][r] * sr_minus * std::pow(-mu_i, static_cast<double>(u - r));
                dpow *= d;
            }
            theta[i] = acc / nm1;
        }
        stats.central_moment_se[u - 2] = se_of(theta);
    }
}

}  // namespace

SimulationResult simulate(const TwoValuedModel& model, std::uint64_t trials, std::uint64_t seed,
                          unsigned max_order, unsigned threads) {
    if (trials < 1) throw ParameterError("simulate requires trials >= 1");
    if (max_order < 2) max_order = 2;
    if (max_order > kMaxModelOrder) throw OrderLimitError("simulate order cap is 8");

    SimulationResult result;
    result.trials = trials;
    result.seed = seed;
    result.exact = exact_moments(model, max_order);

    result.raw_samples.assign(static_cast<std::size_t>(trials), 0.0);
    unsigned nthreads = threads == 0 ? default_threads() : threads;
    constexpr std::uint64_t kTrialChunk = 4096;
    std::size_t chunks = static_cast<std::size_t>((trials + kTrialChunk - 1) / kTrialChunk);
    run_chunks(chunks, nthreads, [&](std::size_t c) {
        std::uint64_t t0 = c * kTrialChunk;
        std::uint64_t t1 = std::min(trials, t0 + kTrialChunk);
        for (std::uint64_t t = t0; t < t1; ++t) {
            SplitMix64 rng = SplitMix64::for_trial(seed, t);
            double sum = 0.0;
            for (const auto& e : model.entries)
                if (rng.bernoulli(e.prob)) sum += e.value;
            result.raw_samples[static_cast<std::size_t>(t)] = sum;
        }
    });

    // Sample statistics, sequential and in trial order.
    ModelMoments sample;
    sample.monte_carlo = true;
    sample.trials = trials;
    sample.max_order = max_order;
    CompensatedSum mean_acc;
    for (double x : result.raw_samples) mean_acc.add(x);
    sample.mean = mean_acc.value() / static_cast<double>(trials);
    std::vector<CompensatedSum> pows(max_order - 1);
    for (double x : result.raw_samples) {
        double d = x - sample.mean;
        double power = d;
        for (unsigned u = 0; u + 1 < max_order; ++u) {
            power *= d;
            pows[u].add(power);
        }
    }
    for (unsigned u = 0; u + 1 < max_order; ++u)
        sample.central_moments.push_back(pows[u].value() / static_cast<double>(trials));
    sample.variance = sample.central_moments[0];
    sample.asymptotic_variance = result.exact.asymptotic_variance;
    jackknife_errors(result.raw_samples, sample.mean, max_order, sample);
    result.sample = sample;

    // Normalized empirical CDF uses the exact mean and exact variance.
    double sigma = result.exact.variance > 0.0 ? std::sqrt(result.exact.variance) : 0.0;
    result.distribution.size = trials;
    result.distribution.samples.reserve(static_cast<std::size_t>(trials));
    for (double x : result.raw_samples)
        result.distribution.samples.push_back(sigma > 0.0 ? (x - result.exact.mean) / sigma : 0.0);
    std::sort(result.distribution.samples.begin(), result.distribution.samples.end());
    return result;
}

}  // namespace progmom
