#pragma once

// Refined Stirling enclosures (Robbins form) and the two sandwich bounds
// built on top of them for n! e^{n+alpha}/(n+alpha)^{n+1} and
// (n/(n+alpha))^{n+1/2}. These are the closed forms the simple Delta_k
// bounds reduce to.

#include <stdexcept>

#include "sterr/enclosure.hpp"
#include "sterr/precision.hpp"

namespace sterr::stirling {

namespace detail {

inline void check_alpha(const BigFloat& alpha) {
    if (alpha.is_nan() || alpha < 0L || alpha > 1L)
        throw std::domain_error("stirling: alpha out of range [0, 1]");
}

}  // namespace detail

// ln n! lies in [ln sqrt(2 pi n) + n ln n - n + 1/(12n+1),
//                ln sqrt(2 pi n) + n ln n - n + 1/(12n)].
inline Enclosure robbins_bounds(long n, PrecisionConfig p = {}) {
    p.validate();
    if (n < 1 || n > 1000000) throw std::domain_error("robbins_bounds: n out of range");
    const int wp = p.bits + 32;
    BigFloat nb(n, wp);
    BigFloat base = log(2 * BigFloat::pi(wp) * nb) / 2 + nb * log(nb) - nb;
    BigFloat lo = base + BigFloat(1, wp) / (12 * n + 1);
    BigFloat hi = base + BigFloat(1, wp) / (12 * n);
    return enclose_outward(lo, hi, p.bits);
}

// n! e^{n+alpha}/(n+alpha)^{n+1} lies in
// [sqrt(2 pi) e^{1/(12n+1) - 1/(16n) - alpha(1-alpha)/(4n)} / sqrt(n+alpha),
//  sqrt(2 pi) e^{1/(12n) - alpha(1-alpha)/(4n)} / sqrt(n+alpha)].
inline Enclosure factorial_expr_bounds(long n, const BigFloat& alpha,
                                       PrecisionConfig p = {}) {
    p.validate();
    if (n < 1) throw std::domain_error("factorial_expr_bounds: n < 1");
    detail::check_alpha(alpha);
    const int wp = p.bits + 32;
    BigFloat a = alpha;
    if (a.precision() < wp) a.set_precision(wp);
    BigFloat root = sqrt(2 * BigFloat::pi(wp)) / sqrt(n + a);
    BigFloat shared = a * (1L - a) / (4 * n);
    BigFloat lo = root * exp(BigFloat(1, wp) / (12 * n + 1) -
                             BigFloat(1, wp) / (16 * n) - shared);
    BigFloat hi = root * exp(BigFloat(1, wp) / (12 * n) - shared);
    return enclose_outward(lo, hi, p.bits);
}

// (n/(n+alpha))^{n+1/2} lies in
// [e^{-alpha - alpha(1-alpha)/(4n) - 1/(16n)}, e^{-alpha - alpha(1-alpha)/(4n)}].
inline Enclosure exp_power_bounds(long n, const BigFloat& alpha,
                                  PrecisionConfig p = {}) {
    p.validate();
    if (n < 1) throw std::domain_error("exp_power_bounds: n < 1");
    detail::check_alpha(alpha);
    const int wp = p.bits + 32;
    BigFloat a = alpha;
    if (a.precision() < wp) a.set_precision(wp);
    BigFloat common = -a - a * (1L - a) / (4 * n);
    BigFloat lo = exp(common - BigFloat(1, wp) / (16 * n));
    BigFloat hi = exp(common);
    return enclose_outward(lo, hi, p.bits);
}

}  // namespace sterr::stirling
