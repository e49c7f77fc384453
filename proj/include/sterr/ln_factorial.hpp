#pragma once

// ln(n!) as a compensated cumulative sum of ln(i), i = 2..n. Relative error
// is bounded by n * 2^(1-p) (each log correctly rounded, compensated
// accumulation). The table variant amortizes the logs across a sweep.

#include <stdexcept>
#include <vector>

#include "sterr/precision.hpp"
#include "sterr/summation.hpp"

namespace sterr {

inline constexpr long kLnFactorialMaxN = 1000000;

inline BigFloat ln_factorial(long n, PrecisionConfig p) {
    p.validate();
    if (n < 0 || n > kLnFactorialMaxN)
        throw std::domain_error("ln_factorial: n out of range [0, 1e6]");
    const BigFloat zero(0L, p.bits);
    if (n <= 1) return zero;
    NeumaierSum<BigFloat> acc(zero);
    for (long i = 2; i <= n; ++i) acc.add(log(BigFloat(i, p.bits)));
    return acc.value();
}

class LnFactorialTable {
  public:
    LnFactorialTable(long n_max, PrecisionConfig p) : p_(p) {
        p.validate();
        if (n_max < 0 || n_max > kLnFactorialMaxN)
            throw std::domain_error("LnFactorialTable: n_max out of range [0, 1e6]");
        values_.reserve(static_cast<size_t>(n_max) + 1);
        const BigFloat zero(0L, p.bits);
        values_.push_back(zero);  // ln 0! = 0
        NeumaierSum<BigFloat> acc(zero);
        for (long i = 1; i <= n_max; ++i) {
            if (i >= 2) acc.add(log(BigFloat(i, p.bits)));
            values_.push_back(acc.value());
        }
    }

    const BigFloat& operator[](long n) const { return values_.at(static_cast<size_t>(n)); }
    long n_max() const { return static_cast<long>(values_.size()) - 1; }
    PrecisionConfig precision() const { return p_; }

  private:
    PrecisionConfig p_;
    std::vector<BigFloat> values_;
};

}  // namespace sterr
