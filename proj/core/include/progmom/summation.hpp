#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace progmom {

// Neumaier-compensated accumulator. Unlike plain Kahan it stays correct
// when the incoming term is larger than the running sum.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double init) : sum_(init) {}

    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    // Merges another accumulator; merge order must be fixed by the caller
    // when determinism across worker counts is required.
    void merge(const CompensatedSum& o) {
        add(o.sum_);
        comp_ += o.comp_;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

}  // namespace progmom
