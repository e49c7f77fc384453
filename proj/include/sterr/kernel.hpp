#pragma once

// The error kernel
//
//     f_n(u) = u (1 - u) e^{n+u} n! / (n + u)^{n+2},   u in [0, 1],
//
// its maximizer, and a sweep evaluator for dense sampling. The raw formula
// overflows everything (e^n n! alone passes 1e3000 by n = 400), so both
// evaluation routes work from logarithms:
//
//   kernel_f     exp(ln u + ln(1-u) + n + u + ln n! - (n+2) ln(n+u)),
//                one point at a time, any precision;
//   SweepEvaluator
//                f_n(u) = u(1-u) K_n exp(u - (n+2) log1p(u/n)) with
//                K_n = exp(n + ln n! - (n+2) ln n) precomputed in BigFloat
//                and rounded once, so a double or long double sweep carries
//                no n-dependent error growth.
//
// The maximizer solves c(u) = u^3 - u^2 + (1+2n)u - n = 0. c is strictly
// increasing on [0, 1] for n >= 1 (its derivative 3u^2 - 2u + 1 + 2n has
// negative discriminant), so plain bisection brackets the unique root.

#include <cmath>
#include <stdexcept>

#include "sterr/ln_factorial.hpp"
#include "sterr/precision.hpp"

namespace sterr::kernel {

inline constexpr long kMaxKernelIndex = kLnFactorialMaxN;

namespace detail {

inline void check_n(long n) {
    if (n < 1 || n > kMaxKernelIndex)
        throw std::domain_error("kernel: n out of range [1, 1e6]");
}

inline void check_u(const BigFloat& u) {
    if (u.is_nan() || u < 0L || u > 1L)
        throw std::domain_error("kernel: u out of range [0, 1]");
}

}  // namespace detail

inline BigFloat kernel_f(long n, const BigFloat& u, PrecisionConfig p) {
    p.validate();
    detail::check_n(n);
    detail::check_u(u);
    const int wp = p.bits + 32;
    if (u.is_zero() || u == 1L) return BigFloat(0, p.bits);
    BigFloat uw = u;
    if (uw.precision() < wp) uw.set_precision(wp);
    BigFloat ln_f = log(uw) + log1p(-uw) + n + uw +
                    ln_factorial(n, PrecisionConfig{wp}) -
                    (n + 2) * log(BigFloat(n, wp) + uw);
    BigFloat r = exp(ln_f);
    r.set_precision(p.bits);
    return r;
}

// Evaluates f_n at many points of one fixed n. The constant
// c_n = n + ln n! - (n+2) ln n is formed in BigFloat and rounded to Real
// once, so each evaluation costs one exp, one log1p and a handful of
// multiplies in the target type.
template <typename Real>
class SweepEvaluator {
public:
    SweepEvaluator(long n, PrecisionConfig p) : n_(static_cast<Real>(n)) {
        p.validate();
        detail::check_n(n);
        const int cp = p.bits + 32 > 224 ? p.bits + 32 : 224;
        BigFloat c = BigFloat(n, cp) + ln_factorial(n, PrecisionConfig{cp}) -
                     (n + 2) * log(BigFloat(n, cp));
        c_ = to_real<Real>(c);
        np2_ = static_cast<Real>(n + 2);
    }

    Real operator()(const Real& u) const {
        using std::exp;
        using std::log1p;
        return u * (Real(1) - u) * exp(c_ + u - np2_ * log1p(u / n_));
    }

private:
    Real n_;
    Real np2_;
    Real c_;
};

template <>
inline SweepEvaluator<BigFloat>::SweepEvaluator(long n, PrecisionConfig p)
    : n_(BigFloat(n, p.bits + 32)) {
    p.validate();
    detail::check_n(n);
    const int wp = p.bits + 32;
    c_ = BigFloat(n, wp) + ln_factorial(n, PrecisionConfig{wp}) -
         (n + 2) * log(BigFloat(n, wp));
    np2_ = BigFloat(n + 2, wp);
}

inline BigFloat maximizer_cubic(long n, const BigFloat& u) {
    return pow(u, 3) - pow(u, 2) + (2 * n + 1) * u - n;
}

struct MaximizerResult {
    long n;
    BigFloat u_star;     // bracket midpoint
    BigFloat f_value;    // f_n(u_star)
    BigFloat half_width; // final bracket half-width
};

// Bisects c(u) = 0 on [0, 1] down to an absolute half-width of
// 2^-(bits/2 + 4). The squared width is what enters the maximum bound
// downstream (f is locally quadratic at its peak), so half precision on u
// already over-resolves f_max at full precision.
inline MaximizerResult maximize(long n, PrecisionConfig p) {
    p.validate();
    detail::check_n(n);
    const int wp = p.bits + 32;
    const BigFloat tol = BigFloat::pow2(-(p.bits / 2 + 4), wp);
    BigFloat lo(0, wp), hi(1, wp);
    while (hi - lo > tol) {
        BigFloat mid = (lo + hi) / 2;
        if (maximizer_cubic(n, mid).sign() < 0)
            lo = mid;
        else
            hi = mid;
    }
    MaximizerResult r;
    r.n = n;
    r.u_star = (lo + hi) / 2;
    r.half_width = (hi - lo) / 2;
    r.f_value = kernel_f(n, r.u_star, PrecisionConfig{wp});
    r.u_star.set_precision(p.bits);
    r.f_value.set_precision(p.bits);
    return r;
}

}  // namespace sterr::kernel
