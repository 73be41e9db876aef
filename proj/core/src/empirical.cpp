#include "progmom/empirical.hpp"

#include <algorithm>
#include <cmath>

#include "progmom/parallel.hpp"
#include "progmom/summation.hpp"

namespace progmom {

namespace detail {

namespace {

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    std::int64_t x0 = 1, x1 = 0;
    std::int64_t y0 = static_cast<std::int64_t>(a % p), y1 = static_cast<std::int64_t>(p);
    while (y1 > 0) {
        std::int64_t q = y0 / y1;
        std::int64_t t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    std::int64_t m = static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(((x0 % m) + m) % m);
}

}  // namespace

std::vector<std::uint64_t> sweep_base_primes(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r < 2) return {};
    std::vector<std::uint8_t> composite(r + 1, 0);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= r; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= r; j += i) composite[j] = 1;
    }
    return primes;
}

void progression_values(const AdditiveFunction& f, const ProgressionSpec& spec,
                        const std::vector<std::uint64_t>& base_primes, std::uint64_t j_begin,
                        std::uint64_t j_end, std::vector<double>& out) {
    std::size_t len = static_cast<std::size_t>(j_end - j_begin);
    out.assign(len, 0.0);
    if (len == 0) return;

    std::uint64_t hi_m = spec.member(j_end - 1);
    std::vector<std::uint64_t> rem(len);
    for (std::size_t i = 0; i < len; ++i) rem[i] = spec.member(j_begin + i);

    for (std::uint64_t p : base_primes) {
        if (p * p > hi_m) break;
        if (spec.k % p == 0) continue;  // no member is divisible by p
        // Solve l + j*k == 0 (mod p) for the member index j.
        std::uint64_t inv_k = spec.k == 1 ? 1 : mod_inverse(spec.k % p, p);
        std::uint64_t j_res = ((p - spec.l % p) % p) * inv_k % p;
        std::uint64_t j = j_begin + (j_res + p - j_begin % p) % p;
        for (; j < j_end; j += p) {
            std::size_t i = static_cast<std::size_t>(j - j_begin);
            std::uint32_t a = 0;
            while (rem[i] % p == 0) {
                rem[i] /= p;
                ++a;
            }
            out[i] += f.rule(p, a);
        }
    }
    // What is left is 1 or a prime above sqrt(hi_m).
    for (std::size_t i = 0; i < len; ++i)
        if (rem[i] > 1) out[i] += f.rule(rem[i], 1);
}

}  // namespace detail

namespace {

struct SweepPlan {
    std::uint64_t count = 0;
    std::uint64_t chunk_members = 0;
    std::size_t chunks = 0;
    unsigned threads = 1;
    std::vector<std::uint64_t> base_primes;

    std::uint64_t begin(std::size_t c) const { return c * chunk_members; }
    std::uint64_t end(std::size_t c) const { return std::min(count, (c + 1) * chunk_members); }
};

SweepPlan make_plan(const ProgressionSpec& spec, const EvalContext& ctx) {
    SweepPlan plan;
    plan.count = spec.count();
    plan.chunk_members = std::max<std::uint64_t>(1, ctx.chunk_members);
    plan.chunks = static_cast<std::size_t>((plan.count + plan.chunk_members - 1) / plan.chunk_members);
    plan.threads = ctx.threads == 0 ? default_threads() : ctx.threads;
    plan.base_primes = detail::sweep_base_primes(spec.n);
    return plan;
}

}  // namespace

MomentReport empirical_moments(const AdditiveFunction& f, const ProgressionSpec& spec,
                               unsigned max_order, const EvalContext& ctx) {
    spec.validate();
    if (max_order < 2) throw OrderLimitError("empirical_moments requires max_order >= 2");
    if (max_order > kMaxEmpiricalOrder)
        throw OrderLimitError("empirical_moments order cap is 12");
    if (spec.count() == 0) throw EmptyDomainError("empty progression");

    SweepPlan plan = make_plan(spec, ctx);

    // Pass 1: mean.
    std::vector<CompensatedSum> chunk_sums(plan.chunks);
    run_chunks(plan.chunks, plan.threads, [&](std::size_t c) {
        std::vector<double> fv;
        detail::progression_values(f, spec, plan.base_primes, plan.begin(c), plan.end(c), fv);
        CompensatedSum s;
        for (double v : fv) s.add(v);
        chunk_sums[c] = s;
    });
    CompensatedSum total;
    for (const auto& s : chunk_sums) total.merge(s);
    double mean = total.value() / static_cast<double>(plan.count);

    // Pass 2: centered powers.
    unsigned orders = max_order - 1;  // u = 2..max_order
    std::vector<std::vector<CompensatedSum>> chunk_pows(plan.chunks,
                                                        std::vector<CompensatedSum>(orders));
    run_chunks(plan.chunks, plan.threads, [&](std::size_t c) {
        std::vector<double> fv;
        detail::progression_values(f, spec, plan.base_primes, plan.begin(c), plan.end(c), fv);
        auto& acc = chunk_pows[c];
        for (double v : fv) {
            double d = v - mean;
            double power = d;
            for (unsigned u = 0; u < orders; ++u) {
                power *= d;
                acc[u].add(power);
            }
        }
    });

    MomentReport report;
    report.spec = spec;
    report.count = plan.count;
    report.mean = mean;
    report.max_order = max_order;
    report.central_moments.reserve(orders);
    for (unsigned u = 0; u < orders; ++u) {
        CompensatedSum s;
        for (const auto& chunk : chunk_pows) s.merge(chunk[u]);
        report.central_moments.push_back(s.value() / static_cast<double>(plan.count));
    }
    return report;
}

EmpiricalDistribution normalized_cdf(const AdditiveFunction& f, const ProgressionSpec& spec,
                                     const EvalContext& ctx) {
    MomentReport report = empirical_moments(f, spec, 2, ctx);
    double variance = report.variance();
    if (!(variance > 0.0))
        throw DegenerateDistributionError("D(n) = 0: normalized distribution is degenerate");
    double sigma = std::sqrt(variance);

    SweepPlan plan = make_plan(spec, ctx);
    EmpiricalDistribution dist;
    dist.size = plan.count;

    if (plan.count <= ctx.sample_cap) {
        dist.samples.assign(static_cast<std::size_t>(plan.count), 0.0);
        run_chunks(plan.chunks, plan.threads, [&](std::size_t c) {
            std::vector<double> fv;
            detail::progression_values(f, spec, plan.base_primes, plan.begin(c), plan.end(c), fv);
            std::uint64_t base = plan.begin(c);
            for (std::size_t i = 0; i < fv.size(); ++i)
                dist.samples[static_cast<std::size_t>(base + i)] = (fv[i] - report.mean) / sigma;
        });
        std::sort(dist.samples.begin(), dist.samples.end());
        return dist;
    }

    dist.is_histogram = true;
    dist.counts.assign(EmpiricalDistribution::kHistBins, 0);
    std::vector<std::vector<std::uint64_t>> chunk_counts(plan.chunks);
    std::vector<std::uint64_t> chunk_under(plan.chunks, 0), chunk_over(plan.chunks, 0);
    const double lo = EmpiricalDistribution::kHistLo;
    const double hi = EmpiricalDistribution::kHistHi;
    const double scale = EmpiricalDistribution::kHistBins / (hi - lo);
    run_chunks(plan.chunks, plan.threads, [&](std::size_t c) {
        std::vector<double> fv;
        detail::progression_values(f, spec, plan.base_primes, plan.begin(c), plan.end(c), fv);
        auto& counts = chunk_counts[c];
        counts.assign(EmpiricalDistribution::kHistBins, 0);
        for (double v : fv) {
            double z = (v - report.mean) / sigma;
            if (z < lo) {
                ++chunk_under[c];
            } else if (z >= hi) {
                ++chunk_over[c];
            } else {
                auto bin = static_cast<std::size_t>((z - lo) * scale);
                if (bin >= EmpiricalDistribution::kHistBins) bin = EmpiricalDistribution::kHistBins - 1;
                ++counts[bin];
            }
        }
    });
    for (std::size_t c = 0; c < plan.chunks; ++c) {
        dist.underflow += chunk_under[c];
        dist.overflow += chunk_over[c];
        for (std::size_t b = 0; b < dist.counts.size(); ++b) dist.counts[b] += chunk_counts[c][b];
    }
    std::uint64_t max_bin = std::max({*std::max_element(dist.counts.begin(), dist.counts.end()),
                                      dist.underflow, dist.overflow});
    dist.binning_slack = static_cast<double>(max_bin) / static_cast<double>(dist.size);
    return dist;
}

double EmpiricalDistribution::cdf(double x) const {
    if (size == 0) return 0.0;
    if (!is_histogram) {
        auto it = std::upper_bound(samples.begin(), samples.end(), x);
        return static_cast<double>(it - samples.begin()) / static_cast<double>(size);
    }
    if (x < kHistLo) return 0.0;
    std::uint64_t cum = underflow;
    if (x >= kHistHi) {
        for (auto c : counts) cum += c;
        return static_cast<double>(cum) / static_cast<double>(size);
    }
    auto bin = static_cast<std::size_t>((x - kHistLo) * kHistBins / (kHistHi - kHistLo));
    if (bin >= kHistBins) bin = kHistBins - 1;
    for (std::size_t b = 0; b <= bin; ++b) cum += counts[b];
    return static_cast<double>(cum) / static_cast<double>(size);
}

}  // namespace progmom
