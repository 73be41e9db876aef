#include "progmom/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>

namespace progmom {

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Plain byte sieve for the base primes (up to sqrt of the target bound).
std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
    std::vector<std::uint8_t> composite(limit + 1, 0);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return primes;
}

}  // namespace

PrimeSet primes_up_to(std::uint64_t n, std::uint64_t segment_size) {
    if (n < 2) throw EmptyRangeError("primes_up_to requires n >= 2");
    if (segment_size < 64) segment_size = 64;

    PrimeSet out;
    out.bound = n;
    auto base = simple_sieve(isqrt_u64(n));

    std::vector<std::uint8_t> composite(segment_size);
    for (std::uint64_t lo = 2; lo <= n; lo += segment_size) {
        std::uint64_t hi = std::min(n, lo + segment_size - 1);
        std::size_t len = static_cast<std::size_t>(hi - lo + 1);
        std::fill(composite.begin(), composite.begin() + len, 0);
        for (std::uint64_t p : base) {
            if (p * p > hi) break;
            std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= hi; j += p) composite[j - lo] = 1;
        }
        for (std::size_t i = 0; i < len; ++i)
            if (!composite[i]) out.primes.push_back(lo + i);
    }
    return out;
}

PrimeSet primes_in_progression(const PrimeSet& ps, std::uint64_t k, std::uint64_t l) {
    if (k < 1 || l < 1 || l > k || std::gcd(k, l) != 1)
        throw InvalidProgressionError("primes_in_progression requires 1 <= l <= k and gcd(k, l) = 1");
    if (k == 1) return ps;
    PrimeSet out;
    out.bound = ps.bound;
    for (std::uint64_t p : ps.primes)
        if (p % k == l % k) out.primes.push_back(p);
    return out;
}

SpfTable spf_table(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 1 || lo > hi) throw RangeError("spf_table requires 1 <= lo <= hi");
    if (hi - lo + 1 > kMaxSpfSpan) throw RangeError("spf_table span exceeds configured segment limit");

    SpfTable t;
    t.lo = lo;
    t.hi = hi;
    t.spf.assign(static_cast<std::size_t>(hi - lo + 1), SpfTable::kNoFactor);

    auto base = simple_sieve(isqrt_u64(hi));
    for (std::uint64_t p : base) {
        std::uint64_t start = std::max(p, ((lo + p - 1) / p) * p);
        for (std::uint64_t j = start; j <= hi; j += p) {
            auto& slot = t.spf[j - lo];
            if (slot == SpfTable::kNoFactor) slot = static_cast<std::uint32_t>(p);
        }
    }
    // Untouched entries > 1 have no prime factor <= sqrt(hi): they are prime.
    for (std::uint64_t m = std::max<std::uint64_t>(lo, 2); m <= hi; ++m) {
        auto& slot = t.spf[m - lo];
        if (slot == SpfTable::kNoFactor) slot = static_cast<std::uint32_t>(m);
    }
    return t;
}

namespace {

std::uint64_t least_factor_trial(std::uint64_t m) {
    if (m % 2 == 0) return 2;
    for (std::uint64_t d = 3; d * d <= m; d += 2)
        if (m % d == 0) return d;
    return m;
}

}  // namespace

Factorization factorize(std::uint64_t m, const SpfTable& table) {
    if (!table.contains(m)) throw RangeError("factorize: m outside table range");
    Factorization f;
    f.m = m;
    std::uint64_t rest = m;
    while (rest > 1) {
        std::uint64_t p = table.contains(rest) ? table.at(rest) : least_factor_trial(rest);
        std::uint32_t a = 0;
        while (rest % p == 0) {
            rest /= p;
            ++a;
        }
        f.factors.emplace_back(p, a);
    }
    std::sort(f.factors.begin(), f.factors.end());
    return f;
}

bool is_prime_u64(std::uint64_t m) {
    if (m < 2) return false;
    return least_factor_trial(m) == m;
}

namespace {

constexpr char kCacheMagic[4] = {'P', 'M', 'P', 'S'};
constexpr std::uint32_t kCacheVersion = 1;

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t len) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

void put_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(v) | 0x80);
        v >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace

void save_prime_cache(const PrimeSet& ps, const std::string& path) {
    std::vector<std::uint8_t> payload;
    payload.reserve(ps.primes.size() + 16);
    std::uint64_t prev = 0;
    for (std::uint64_t p : ps.primes) {
        put_varint(payload, p - prev);
        prev = p;
    }

    std::vector<std::uint8_t> blob;
    blob.insert(blob.end(), kCacheMagic, kCacheMagic + 4);
    put_u64(blob, kCacheVersion);
    put_u64(blob, ps.bound);
    put_u64(blob, ps.primes.size());
    put_u64(blob, fnv1a(payload.data(), payload.size()));
    blob.insert(blob.end(), payload.begin(), payload.end());

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot open cache file for writing: " + path);
    out.write(reinterpret_cast<const char*>(blob.data()), static_cast<std::streamsize>(blob.size()));
    if (!out) throw CacheError("short write to cache file: " + path);
}

PrimeSet load_prime_cache(const std::string& path, std::uint64_t expected_bound) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open cache file: " + path);
    std::vector<std::uint8_t> blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (blob.size() < 36) throw CacheError("cache file truncated: " + path);
    if (std::memcmp(blob.data(), kCacheMagic, 4) != 0) throw CacheError("bad cache magic: " + path);
    if (get_u64(blob.data() + 4) != kCacheVersion) throw CacheError("unsupported cache version: " + path);

    std::uint64_t bound = get_u64(blob.data() + 12);
    std::uint64_t count = get_u64(blob.data() + 20);
    std::uint64_t checksum = get_u64(blob.data() + 28);
    if (bound != expected_bound) throw CacheError("cache bound mismatch: " + path);

    const std::uint8_t* payload = blob.data() + 36;
    std::size_t payload_len = blob.size() - 36;
    if (fnv1a(payload, payload_len) != checksum) throw CacheError("cache checksum mismatch: " + path);

    PrimeSet ps;
    ps.bound = bound;
    ps.primes.reserve(count);
    std::uint64_t prev = 0;
    std::size_t pos = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t v = 0;
        int shift = 0;
        for (;;) {
            if (pos >= payload_len) throw CacheError("cache payload truncated: " + path);
            std::uint8_t b = payload[pos++];
            v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
            if (!(b & 0x80)) break;
            shift += 7;
        }
        prev += v;
        ps.primes.push_back(prev);
    }
    if (pos != payload_len) throw CacheError("cache payload has trailing bytes: " + path);
    return ps;
}

}  // namespace progmom
