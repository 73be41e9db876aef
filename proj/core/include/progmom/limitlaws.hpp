#pragma once

#include <functional>
#include <vector>

#include "progmom/empirical.hpp"
#include "progmom/functions.hpp"
#include "progmom/predictor.hpp"

namespace progmom {

// The piecewise-quadratic limit law of the two-valued sums:
//   K(u) = 0                     u < A
//   K(u) = mu (1 - u^2/A^2)      A <= u < 0
//   K(u) = 1 - nu                u = 0   (right-continuous convention)
//   K(u) = nu u^2/C^2 + 1 - nu   0 < u <= C
//   K(u) = 1                     u > C
struct KolmogorovFunction {
    KolmogorovParams params;

    explicit KolmogorovFunction(const KolmogorovParams& p) : params(p) { params.validate(); }
    double operator()(double u) const;
};

double k_eval(const KolmogorovFunction& kf, double u);

// F_n(u) = (1/D) sum over selected p <= n with f(p) < u sqrt(D) of f^2(p)/p,
// where D = sum f^2(p)/p over the whole selected set.
struct ConditionProfile {
    std::vector<double> grid;
    std::vector<double> values;
    double variance = 0.0;  // the D used for normalization
};

// Empty grid: 512 points spanning [min f(p)/sqrt(D) - 0.1, max + 0.1].
ConditionProfile condition_profile(const AdditiveFunction& f, const ProgressionSpec& spec,
                                   PrimeSumMode mode, const PrimeSet& primes,
                                   std::vector<double> grid = {});

// Standard normal CDF, |error| < 1e-12 everywhere.
double normal_cdf(double x);

// Two-sided sup distance between the empirical CDF and ref at every order
// statistic; histogram-backed inputs add the reported binning slack.
double ks_distance(const EmpiricalDistribution& emp, const std::function<double(double)>& ref_cdf);

}  // namespace progmom
