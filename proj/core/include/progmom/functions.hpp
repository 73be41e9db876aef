#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "progmom/errors.hpp"
#include "progmom/primes.hpp"

namespace progmom {

// An additive arithmetic function, determined by its value on prime powers.
// For strongly additive functions the rule must not depend on the exponent.
struct AdditiveFunction {
    std::string name;
    std::function<double(std::uint64_t p, std::uint32_t a)> rule;
    bool strongly_additive = false;

    double on_prime(std::uint64_t p) const { return rule(p, 1); }
};

// Built-in functions:
//   omega                         f(p^a) = 1          (strongly additive)
//   big_omega                     f(p^a) = a
//   omega_diff                    f(p^a) = a - 1      (zero on primes)
//   log_phi_ratio                 f(p)   = ln(1 - 1/p) (strongly additive)
//   big_omega_minus_log_phi_ratio f(p^a) = a - ln(1 - 1/p)
//   log_m                         f(p^a) = a ln p
//   log_p_sum                     f(p)   = ln p       (strongly additive)
AdditiveFunction builtin(const std::string& name);

std::vector<std::string> builtin_names();

// f*(m) = sum_{p|m} f(p): same prime values, exponent ignored.
AdditiveFunction strongly_additive_companion(const AdditiveFunction& f);

// Pointwise difference on prime powers.
AdditiveFunction difference(const AdditiveFunction& f, const AdditiveFunction& g);

// f(m) = sum over p^a || m of rule(p, a); eval(f, 1) = 0.
double eval(const AdditiveFunction& f, std::uint64_t m, const SpfTable& table);

// Constants (A, C, mu, nu) of the limit function K(u).
struct KolmogorovParams {
    double A = 0.0;   // <= 0
    double C = 0.0;   // >= 0
    double mu = 0.0;  // >= 0
    double nu = 0.0;  // >= 0

    void validate() const;
};

// Partition of a PrimeSet into classes Q0/Q1/Q2.
struct PrimeClassAssignment {
    enum Label : std::uint8_t { Q0 = 0, Q1 = 1, Q2 = 2 };

    std::shared_ptr<const PrimeSet> primes;
    std::vector<std::uint8_t> labels;  // aligned with primes->primes
    std::uint64_t q1_count = 0;
    std::uint64_t q2_count = 0;

    Label label_at(std::size_t i) const { return static_cast<Label>(labels[i]); }
    // Label of a specific prime; primes not in the set default to Q0.
    Label label_of(std::uint64_t p) const;
};

// Target count of Q1 (resp. Q2) primes up to x; zero when A*mu = 0
// (resp. C*nu = 0) or x < 16.
double q1_target(const KolmogorovParams& params, std::uint64_t k, double x);
double q2_target(const KolmogorovParams& params, std::uint64_t k, double x);

// Deterministic greedy realization: scanning primes in ascending order,
// p joins Q1 while the running Q1 count is below q1_target(p), then Q2 by
// the same rule, else Q0. Primes below 16 always stay in Q0.
PrimeClassAssignment build_prime_classes(std::shared_ptr<const PrimeSet> primes,
                                         const KolmogorovParams& params, std::uint64_t k);

// Strongly additive function with
//   f(p) = sqrt(2 (1 + mu sgn A - nu sgn C) ln ln p)   on Q0,
//   f(p) = A ln ln p                                   on Q1,
//   f(p) = C ln ln p                                   on Q2,
// and f(p) = 0 for p < 16.
AdditiveFunction kolmogorov_example_function(const KolmogorovParams& params,
                                             PrimeClassAssignment assignment);

// Compiles the small rule grammar over p, a, ln, log, sqrt, exp, abs with
// + - * / ^ and parentheses, e.g. "ln(1 - 1/p)" or "a - 1".
AdditiveFunction make_user_function(const std::string& name, bool strongly_additive,
                                    const std::string& rule_expr);

}  // namespace progmom
