#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "progmom/model.hpp"
#include "progmom/summation.hpp"
#include "test_oracles.hpp"

using namespace progmom;

namespace {

const PrimeSet& primes_1e6() {
    static PrimeSet ps = primes_up_to(1000000);
    return ps;
}

TwoValuedModel first_entries(const AdditiveFunction& f, std::size_t count) {
    auto model = build_model(f, primes_1e6(), {1, 1, 1000000}, PrimeSumMode::PaperProgression);
    if (model.entries.size() > count) model.entries.resize(count);
    return model;
}

}  // namespace

TEST_CASE("build_model") {
    auto ps = primes_up_to(10);
    auto model = build_model(builtin("omega"), ps, {1, 1, 10}, PrimeSumMode::PaperProgression);
    REQUIRE(model.entries.size() == 4);
    CHECK(model.entries[0].p == 2);
    CHECK(model.entries[0].value == 1.0);
    CHECK(model.entries[0].prob == 0.5);
    CHECK(model.entries[3].p == 7);

    auto empty = build_model(builtin("omega_diff"), ps, {1, 1, 10}, PrimeSumMode::PaperProgression);
    CHECK(empty.entries.empty());

    auto big = build_model(builtin("omega"), primes_1e6(), {4, 1, 1000000},
                           PrimeSumMode::PaperProgression);
    CHECK(big.entries.size() == 39175);

    for (const auto& e : big.entries) {
        CHECK(e.prob > 0.0);
        CHECK(e.prob <= 0.5);
    }
}

TEST_CASE("exact_moments closed cases") {
    TwoValuedModel one;
    one.spec = {1, 1, 2};
    one.entries = {{2, 1.0, 0.5}};
    auto m = exact_moments(one, 4);
    CHECK(m.mean == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.variance == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(m.central_moment(3) == doctest::Approx(0.0));

    TwoValuedModel two = one;
    two.entries.push_back({3, 1.0, 1.0 / 3.0});
    auto m2 = exact_moments(two, 4);
    CHECK(m2.variance == doctest::Approx(17.0 / 36.0).epsilon(1e-14));

    CHECK_THROWS_AS(exact_moments(one, 9), OrderLimitError);
}

TEST_CASE("exact variance identities at 1e6") {
    auto model = build_model(builtin("omega"), primes_1e6(), {1, 1, 1000000},
                             PrimeSumMode::PaperProgression);
    auto m = exact_moments(model, 4);
    // exact vs leading-order variance differ by sum of 1/p^2
    CHECK(m.asymptotic_variance - m.variance == doctest::Approx(0.452247352265374).epsilon(1e-9));
    // exact variance equals the per-entry closed form, and cumulant 2
    CompensatedSum acc;
    for (const auto& e : model.entries) acc.add(xp_central_moment(e.value, e.p, 2));
    CHECK(m.variance == doctest::Approx(acc.value()).epsilon(1e-14));
    CHECK(m.cumulants[0] == m.variance);
}

TEST_CASE("exact_moments matches brute-force enumeration") {
    for (const char* name : {"omega", "big_omega", "log_phi_ratio", "log_m", "omega_diff"}) {
        auto model = first_entries(builtin(name), 12);
        if (model.entries.empty()) continue;
        auto m = exact_moments(model, 6);
        std::vector<oracle::TwoValuedEntryOracle> entries;
        for (const auto& e : model.entries) entries.push_back({e.value, e.prob});
        auto brute = oracle::enumerate_central_moments(entries, 6);
        CHECK(std::abs(m.mean - brute[1]) <= 1e-10 * std::max(1.0, std::abs(brute[1])));
        for (unsigned u = 2; u <= 6; ++u) {
            double expect = brute[u];
            double got = m.central_moment(u);
            CHECK(std::abs(got - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST_CASE("cumulant additivity under concatenation") {
    auto model = first_entries(builtin("log_p_sum"), 40);
    TwoValuedModel head = model, tail = model;
    head.entries.resize(17);
    tail.entries.erase(tail.entries.begin(), tail.entries.begin() + 17);
    auto all = exact_moments(model, 8);
    auto a = exact_moments(head, 8);
    auto b = exact_moments(tail, 8);
    for (std::size_t i = 0; i < all.cumulants.size(); ++i) {
        double sum = a.cumulants[i] + b.cumulants[i];
        CHECK(all.cumulants[i] == doctest::Approx(sum).epsilon(1e-13));
    }
    CHECK(all.mean == doctest::Approx(a.mean + b.mean).epsilon(1e-14));
}

TEST_CASE("simulate: empty model degenerates without error") {
    auto ps = primes_up_to(100);
    auto model = build_model(builtin("omega_diff"), ps, {1, 1, 100}, PrimeSumMode::PaperProgression);
    auto sim = simulate(model, 1000, 7);
    CHECK(sim.sample.mean == 0.0);
    for (double m : sim.sample.central_moments) CHECK(m == 0.0);
    for (double z : sim.distribution.samples) CHECK(z == 0.0);
}

TEST_CASE("simulate: single entry binomial mean") {
    TwoValuedModel one;
    one.spec = {1, 1, 2};
    one.entries = {{2, 1.0, 0.5}};
    auto sim = simulate(one, 1000000, 123);
    CHECK(std::abs(sim.sample.mean - 0.5) < 0.002);
}

TEST_CASE("simulate is bit-reproducible and worker-count independent") {
    auto model = first_entries(builtin("omega"), 500);
    auto a = simulate(model, 20000, 42, 4, 1);
    auto b = simulate(model, 20000, 42, 4, 4);
    auto c = simulate(model, 20000, 42, 4, 3);
    CHECK(a.raw_samples == b.raw_samples);
    CHECK(a.raw_samples == c.raw_samples);
    CHECK(a.sample.mean == b.sample.mean);
    for (std::size_t i = 0; i < a.sample.central_moments.size(); ++i) {
        CHECK(a.sample.central_moments[i] == b.sample.central_moments[i]);
        CHECK(a.sample.central_moment_se[i] == c.sample.central_moment_se[i]);
    }
    auto again = simulate(model, 20000, 42, 4, 4);
    CHECK(again.raw_samples == a.raw_samples);
}

TEST_CASE("simulate recovers exact moments within jackknife errors") {
    auto ps = primes_up_to(100000);
    auto model = build_model(builtin("omega"), ps, {1, 1, 100000}, PrimeSumMode::PaperProgression);
    auto sim = simulate(model, 100000, 42, 4);
    CHECK(std::abs(sim.sample.mean - sim.exact.mean) < 3.0 * sim.sample.mean_se);
    for (unsigned u = 2; u <= 4; ++u) {
        double se = sim.sample.central_moment_se[u - 2];
        CHECK(std::abs(sim.sample.central_moment(u) - sim.exact.central_moment(u)) < 3.0 * se);
    }
}

TEST_CASE("monte carlo moments converge when trials double") {
    auto ps = primes_up_to(100000);
    auto model = build_model(builtin("omega"), ps, {1, 1, 100000}, PrimeSumMode::PaperProgression);
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        auto small = simulate(model, 10000, seed, 4);
        auto large = simulate(model, 20000, seed + 1000, 4);
        CHECK(std::abs(small.sample.mean - large.sample.mean) <
              4.0 * std::hypot(small.sample.mean_se, large.sample.mean_se));
        for (unsigned u = 2; u <= 4; ++u) {
            double combined = std::hypot(small.sample.central_moment_se[u - 2],
                                         large.sample.central_moment_se[u - 2]);
            CHECK(std::abs(small.sample.central_moment(u) - large.sample.central_moment(u)) <
                  4.0 * combined);
        }
    }
}

TEST_CASE("simulate distribution is normalized by the exact moments") {
    auto model = first_entries(builtin("omega"), 200);
    auto sim = simulate(model, 5000, 9);
    auto exact = exact_moments(model, 2);
    double sigma = std::sqrt(exact.variance);
    // spot-check the normalization on the extremes
    double lo = *std::min_element(sim.raw_samples.begin(), sim.raw_samples.end());
    CHECK(sim.distribution.samples.front() ==
          doctest::Approx((lo - exact.mean) / sigma).epsilon(1e-12));
    CHECK(sim.distribution.size == 5000);
}
