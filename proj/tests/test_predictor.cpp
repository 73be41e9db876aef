#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "progmom/predictor.hpp"
#include "test_oracles.hpp"

using namespace progmom;

namespace {

const PrimeSet& primes_1e6() {
    static PrimeSet ps = primes_up_to(1000000);
    return ps;
}

}  // namespace

TEST_CASE("moment_sums for omega at 1e6") {
    ProgressionSpec spec{1, 1, 1000000};
    auto pred = moment_sums(builtin("omega"), spec, PrimeSumMode::PaperProgression, 4, primes_1e6());
    // direct-summation oracle value, and the Mertens-form sanity bound
    CHECK(pred.sums[0] == doctest::Approx(2.887328099567673).epsilon(1e-12));
    CHECK(std::abs(pred.sums[0] - (std::log(std::log(1e6)) + 0.2615)) < 1e-2);
    // f(p) = 1 makes every order equal
    CHECK(pred.sums[1] == pred.sums[0]);
    CHECK(pred.sums[3] == pred.sums[0]);
    CHECK(pred.B == doctest::Approx(std::sqrt(pred.sums[1])));
}

TEST_CASE("moment_sums for omega_diff vanish") {
    ProgressionSpec spec{4, 1, 100000};
    auto pred = moment_sums(builtin("omega_diff"), spec, PrimeSumMode::PaperProgression, 6, primes_1e6());
    for (double s : pred.sums) CHECK(s == 0.0);
}

TEST_CASE("mode consistency at k=1 is exact") {
    ProgressionSpec spec{1, 1, 1000000};
    for (const char* name : {"omega", "log_phi_ratio", "log_p_sum"}) {
        auto a = moment_sums(builtin(name), spec, PrimeSumMode::PaperProgression, 3, primes_1e6());
        auto b = moment_sums(builtin(name), spec, PrimeSumMode::DivisorDensity, 3, primes_1e6());
        for (unsigned u = 0; u < 3; ++u) CHECK(a.sums[u] == b.sums[u]);
    }
}

TEST_CASE("mertens_progression") {
    SUBCASE("three terms by hand") {
        ProgressionSpec spec{2, 1, 10};
        auto r = mertens_progression(spec, primes_1e6());
        CHECK(r.exact == doctest::Approx(1.0 / 3 + 1.0 / 5 + 1.0 / 7).epsilon(1e-15));
    }
    SUBCASE("k=1 at 1e6 recovers the Mertens constant") {
        ProgressionSpec spec{1, 1, 1000000};
        auto r = mertens_progression(spec, primes_1e6());
        CHECK(r.exact == doctest::Approx(2.887328099567673).epsilon(1e-12));
        CHECK(r.difference == doctest::Approx(0.2615).epsilon(0.02));
    }
    SUBCASE("k=4 difference is stable across scales") {
        auto r5 = mertens_progression({4, 1, 100000}, primes_1e6());
        auto r6 = mertens_progression({4, 1, 1000000}, primes_1e6());
        CHECK(std::abs(r6.difference - r5.difference) < 0.02);
    }
    SUBCASE("difference converges for k <= 12") {
        for (std::uint64_t k = 1; k <= 12; ++k)
            for (std::uint64_t l = 1; l <= k; ++l) {
                if (std::gcd(k, l) != 1) continue;
                auto r5 = mertens_progression({k, l, 100000}, primes_1e6());
                auto r6 = mertens_progression({k, l, 1000000}, primes_1e6());
                CHECK(std::abs(r6.difference - r5.difference) < 0.02);
            }
    }
}

TEST_CASE("bounded_moment_check") {
    SUBCASE("log_phi_ratio has bounded-moment evidence") {
        ProgressionSpec spec{1, 1, 1000000};
        auto r = bounded_moment_check(builtin("log_phi_ratio"), spec, primes_1e6(), 16.0, 1e-3);
        CHECK(r.sup_abs_fp == doctest::Approx(std::log(2.0)).epsilon(1e-15));
        CHECK(r.sup_at == 2);
        CHECK(r.tail_difference < 1e-4);
        CHECK(r.bounded_evidence);
    }
    SUBCASE("omega diverges") {
        ProgressionSpec spec{1, 1, 1000000};
        auto r = bounded_moment_check(builtin("omega"), spec, primes_1e6(), 16.0, 1e-3);
        CHECK(r.sup_abs_fp == 1.0);
        // tail ~ lnln(1e6) - lnln(1e5)
        CHECK(r.tail_difference ==
              doctest::Approx(std::log(std::log(1e6)) - std::log(std::log(1e5))).epsilon(0.05));
        CHECK_FALSE(r.bounded_evidence);
    }
    SUBCASE("zero on primes is trivially bounded") {
        ProgressionSpec spec{1, 1, 100000};
        auto r = bounded_moment_check(builtin("omega_diff"), spec, primes_1e6(), 16.0, 1e-3);
        CHECK(r.sup_abs_fp == 0.0);
        CHECK(r.tail_difference == 0.0);
        CHECK(r.bounded_evidence);
    }
}

TEST_CASE("xp_central_moment closed form") {
    CHECK(xp_central_moment(1.0, 2, 2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(xp_central_moment(1.0, 5, 2) == doctest::Approx(4.0 / 25.0).epsilon(1e-15));
    // remainder against the leading term f^2/p is exactly f^2/p^2 at u=2
    CHECK(std::abs(xp_central_moment(1.0, 5, 2) - 1.0 / 5.0) == doctest::Approx(1.0 / 25.0).epsilon(1e-12));
    for (unsigned u = 1; u <= 6; ++u) CHECK(xp_central_moment(0.0, 7, u) == 0.0);
}

TEST_CASE("xp_central_moment equals the two-outcome expectation") {
    auto brute = [](double fp, std::uint64_t p, unsigned u) {
        long double q = 1.0L / static_cast<long double>(p);
        long double mean = fp * q;
        long double lo = -mean, hi = fp - mean;
        long double lo_pw = 1.0L, hi_pw = 1.0L;
        for (unsigned i = 0; i < u; ++i) {
            lo_pw *= lo;
            hi_pw *= hi;
        }
        return static_cast<double>((1.0L - q) * lo_pw + q * hi_pw);
    };
    for (std::uint64_t p : oracle::simple_sieve(1000))
        for (unsigned u = 1; u <= 6; ++u)
            for (double fp : {-2.5, -1.0, 0.5, 1.0, 3.0}) {
                double expected = brute(fp, p, u);
                double got = xp_central_moment(fp, p, u);
                double scale = std::max(std::pow(std::abs(fp), static_cast<double>(u)),
                                        std::abs(expected));
                CHECK(std::abs(got - expected) <= 1e-12 * scale);
            }
}

TEST_CASE("xp remainder bound") {
    // |E[(X_p - fp/p)^u] - fp^u/p| <= 2^u |fp|^u / p^2 for u >= 2
    // (the order-1 central moment is identically zero, so no such bound
    // can hold there)
    for (std::uint64_t p : oracle::simple_sieve(200))
        for (unsigned u = 2; u <= 6; ++u)
            for (double fp : {-1.5, -1.0, 0.25, 1.0, 2.0}) {
                double lead = std::pow(fp, static_cast<double>(u)) / static_cast<double>(p);
                double bound = std::pow(2.0, static_cast<double>(u)) *
                               std::pow(std::abs(fp), static_cast<double>(u)) /
                               (static_cast<double>(p) * static_cast<double>(p));
                CHECK(std::abs(xp_central_moment(fp, p, u) - lead) <= bound * (1.0 + 1e-12));
            }
}
