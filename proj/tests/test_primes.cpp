#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <numeric>

#include "progmom/primes.hpp"
#include "test_oracles.hpp"

using namespace progmom;

TEST_CASE("primes_up_to small cases") {
    auto ps = primes_up_to(10);
    CHECK(ps.primes == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(ps.bound == 10);

    auto two = primes_up_to(2);
    CHECK(two.primes == std::vector<std::uint64_t>{2});

    CHECK_THROWS_AS(primes_up_to(1), EmptyRangeError);
    CHECK_THROWS_AS(primes_up_to(0), EmptyRangeError);
}

TEST_CASE("primes_up_to 1e6 count matches trial division") {
    auto ps = primes_up_to(1000000);
    CHECK(ps.size() == 78498);
    // brute-force count, independently
    CHECK(oracle::trial_division_pi(1000000) == 78498);
}

TEST_CASE("segmented agrees with plain sieve across segment boundaries") {
    auto expected = oracle::simple_sieve(100000);
    for (std::uint64_t seg : {64ull, 1000ull, 4096ull, 1ull << 20}) {
        auto ps = primes_up_to(100000, seg);
        CHECK(ps.primes == expected);
    }
}

TEST_CASE("primes_in_progression") {
    auto ps = primes_up_to(20);
    auto sel = primes_in_progression(ps, 4, 1);
    CHECK(sel.primes == std::vector<std::uint64_t>{5, 13, 17});

    auto all = primes_in_progression(ps, 1, 1);
    CHECK(all.primes == ps.primes);

    CHECK_THROWS_AS(primes_in_progression(ps, 4, 2), InvalidProgressionError);
    CHECK_THROWS_AS(primes_in_progression(ps, 4, 5), InvalidProgressionError);
}

TEST_CASE("progression counts at 1e6") {
    auto ps = primes_up_to(1000000);
    auto sel = primes_in_progression(ps, 4, 1);
    CHECK(sel.size() == 39175);
}

TEST_CASE("residue classes partition the coprime primes") {
    auto ps = primes_up_to(10000);
    for (std::uint64_t k : {3ull, 4ull, 10ull, 12ull}) {
        std::uint64_t total = 0;
        for (std::uint64_t l = 1; l <= k; ++l)
            if (std::gcd(k, l) == 1) total += primes_in_progression(ps, k, l).size();
        std::uint64_t coprime = 0;
        for (std::uint64_t p : ps.primes)
            if (k % p != 0) ++coprime;
        CHECK(total == coprime);
    }
}

TEST_CASE("spf_table basics") {
    auto t = spf_table(2, 10);
    CHECK(t.at(2) == 2);
    CHECK(t.at(3) == 3);
    CHECK(t.at(4) == 2);
    CHECK(t.at(5) == 5);
    CHECK(t.at(6) == 2);
    CHECK(t.at(7) == 7);
    CHECK(t.at(8) == 2);
    CHECK(t.at(9) == 3);
    CHECK(t.at(10) == 2);

    auto unit = spf_table(1, 1);
    CHECK(unit.at(1) == SpfTable::kNoFactor);

    auto window = spf_table(999900, 1000000);
    CHECK(window.at(999983) == 999983);
    CHECK(oracle::trial_division_is_prime(999983));
    CHECK_THROWS_AS(window.at(999899), RangeError);
    CHECK_THROWS_AS(spf_table(10, 5), RangeError);
}

TEST_CASE("spf windows agree with a full table") {
    auto full = spf_table(1, 20000);
    auto window = spf_table(9990, 10500);
    for (std::uint64_t m = 9990; m <= 10500; ++m) CHECK(window.at(m) == full.at(m));
}

TEST_CASE("factorize") {
    auto t = spf_table(1, 1000);
    auto f = factorize(12, t);
    CHECK(f.factors == std::vector<std::pair<std::uint64_t, std::uint32_t>>{{2, 2}, {3, 1}});

    CHECK(factorize(1, t).factors.empty());
    CHECK_THROWS_AS(factorize(1001, t), RangeError);

    // quotients outside a window table fall back to trial division
    auto window = spf_table(735134390, 735134410);
    auto big = factorize(735134400, window);
    CHECK(big.factors == std::vector<std::pair<std::uint64_t, std::uint32_t>>{
                             {2, 6}, {3, 3}, {5, 2}, {7, 1}, {11, 1}, {13, 1}, {17, 1}});
    std::uint64_t product = 1;
    for (auto [p, a] : big.factors)
        for (std::uint32_t i = 0; i < a; ++i) product *= p;
    CHECK(product == 735134400);
}

TEST_CASE("factorization product recovers m exhaustively") {
    auto t = spf_table(1, 10000);
    for (std::uint64_t m = 1; m <= 10000; ++m) {
        auto f = factorize(m, t);
        std::uint64_t product = 1;
        std::uint64_t prev = 0;
        for (auto [p, a] : f.factors) {
            CHECK(p > prev);
            CHECK(oracle::trial_division_is_prime(p));
            prev = p;
            for (std::uint32_t i = 0; i < a; ++i) product *= p;
        }
        CHECK(product == m);
    }
}

TEST_CASE("prime cache round trip and validation") {
    auto ps = primes_up_to(100000);
    std::string path = "primes_cache_test.bin";
    save_prime_cache(ps, path);

    auto loaded = load_prime_cache(path, 100000);
    CHECK(loaded.bound == ps.bound);
    CHECK(loaded.primes == ps.primes);

    CHECK_THROWS_AS(load_prime_cache(path, 99999), CacheError);

    // corrupt one payload byte: checksum must catch it
    {
        FILE* fp = std::fopen(path.c_str(), "r+b");
        REQUIRE(fp);
        std::fseek(fp, 40, SEEK_SET);
        int c = std::fgetc(fp);
        std::fseek(fp, 40, SEEK_SET);
        std::fputc(c ^ 0x01, fp);
        std::fclose(fp);
    }
    CHECK_THROWS_AS(load_prime_cache(path, 100000), CacheError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_prime_cache(path, 100000), CacheError);
}

TEST_CASE("is_prime_u64 trial division") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(999983));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(999981));
}
