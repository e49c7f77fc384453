#pragma once

// Rigorous Riemann-sum enclosures for shape-constrained integrands.
//
// No directed rounding is used anywhere. Each bound is a plain rounded
// evaluation pushed outward by an explicit error budget: a per-evaluation
// relative error bound supplied by the caller, inflated by a fixed factor
// that covers point placement, the compensated sum and the final scaling.

#include <cmath>
#include <stdexcept>

#include "sterr/summation.hpp"

namespace sterr::riemann {

template <typename Real>
struct Interval {
    Real lo;
    Real hi;
};

namespace detail {

template <typename Real>
struct RealFrom {
    static Real from_long(long i, const Real&) { return static_cast<Real>(i); }
};

template <>
struct RealFrom<BigFloat> {
    static BigFloat from_long(long i, const BigFloat& model) {
        return BigFloat(i, model.precision());
    }
};

}  // namespace detail

// S = sum_{i=1}^{M-1} f(i/M), chunk-deterministic across thread counts.
template <typename Real, typename F>
Real grid_sum(F&& f, long M, const Real& zero, int threads = 1) {
    return sterr::chunked_sum<Real>(
        1, M,
        [&](long i) { return f(detail::RealFrom<Real>::from_long(i, zero) / M); },
        zero, threads);
}

// Encloses I = integral_0^1 f(u) du for f >= 0 unimodal on [0,1]; endpoint
// values need not vanish (a peak at an endpoint is the monotone case, still
// covered). With S the grid sum over i = 1..M-1 and fmax_hi >= max f,
// shifting cell-wise suprema and infima onto grid points gives
//
//     (S - fmax_hi)/M  <=  I  <=  (S + fmax_hi)/M.
//
// eval_rel_err bounds the relative error of one call to f; the interval is
// widened outward by w = 16 eval_rel_err (S + fmax_hi)/M on both sides.
template <typename Real, typename F>
Interval<Real> integral_unimodal(F&& f, long M, const Real& fmax_hi,
                                 const Real& eval_rel_err, const Real& zero,
                                 int threads = 1) {
    if (M < 2) throw std::invalid_argument("integral_unimodal: M < 2");
    if (fmax_hi < Real(0) || eval_rel_err < Real(0))
        throw std::invalid_argument("integral_unimodal: negative bound");
    Real S = grid_sum(f, M, zero, threads);
    Real w = Real(16) * eval_rel_err * (S + fmax_hi) / M;
    Interval<Real> r;
    r.lo = (S - fmax_hi) / M - w;
    r.hi = (S + fmax_hi) / M + w;
    return r;
}

// Encloses integral_a^b f(u) du for f >= 0 monotone on [a, b]. The left sum
// L = sum_{i=0}^{M-1} f(a + i h), h = (b-a)/M, under- or over-shoots by at
// most h |f(b) - f(a)| depending on direction.
template <typename Real, typename F>
Interval<Real> integral_monotone(F&& f, const Real& a, const Real& b, long M,
                                 bool increasing, const Real& eval_rel_err,
                                 const Real& zero, int threads = 1) {
    using std::abs;
    if (M < 1) throw std::invalid_argument("integral_monotone: M < 1");
    if (b < a) throw std::invalid_argument("integral_monotone: b < a");
    if (eval_rel_err < Real(0))
        throw std::invalid_argument("integral_monotone: negative bound");
    Real h = (b - a) / M;
    Real L = sterr::chunked_sum<Real>(
        0, M,
        [&](long i) { return f(a + detail::RealFrom<Real>::from_long(i, zero) * h); },
        zero, threads);
    Real fa = f(a);
    Real fb = f(b);
    Real w = Real(16) * eval_rel_err * (abs(L) + abs(fa) + abs(fb)) * h;
    Interval<Real> r;
    if (increasing) {
        r.lo = L * h - w;
        r.hi = (L + fb - fa) * h + w;
    } else {
        r.lo = (L + fb - fa) * h - w;
        r.hi = L * h + w;
    }
    return r;
}

}  // namespace sterr::riemann
