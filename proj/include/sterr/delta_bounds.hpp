#pragma once

// Certified enclosures for the increments Delta_k = integral_0^1 f_{k-1}(u) du
// and the partial-range variant Delta(x), plus the closed-form simple bounds
// and the F-integral general bounds.
//
// delta_k_riemann dispatches the sweep on precision: 53 bits runs native
// double, 64 bits native long double, anything else MPFR. The certified
// edges are independent of the path; only speed and enclosure width differ.

#include <map>
#include <stdexcept>
#include <utility>

#include "sterr/enclosure.hpp"
#include "sterr/kernel.hpp"
#include "sterr/logint.hpp"
#include "sterr/riemann.hpp"
#include "sterr/stirling.hpp"

namespace sterr::bounds {

struct DeltaRecord {
    long k = 0;
    long M = 0;
    int precision_bits = 0;
    BigFloat S_lower;
    BigFloat S_upper;
    BigFloat u_star;
    BigFloat f_at_ustar;

    Enclosure enclosure() const { return Enclosure(S_lower, S_upper); }
    BigFloat width() const { return S_upper - S_lower; }
};

using DeltaMap = std::map<long, DeltaRecord>;

namespace detail {

template <typename Real>
std::pair<BigFloat, BigFloat> sweep_enclose(long n, long M, PrecisionConfig p,
                                            const BigFloat& fmax_hi, int threads) {
    kernel::SweepEvaluator<Real> f(n, p);
    const Real fm = to_real<Real>(fmax_hi);
    const Real err = to_real<Real>(BigFloat::pow2(-p.bits + 2, 64));
    auto iv = riemann::integral_unimodal<Real>(
        [&](const Real& u) { return f(u); }, M, fm, err, Real(0), threads);
    return {BigFloat(iv.lo, p.bits), BigFloat(iv.hi, p.bits)};
}

template <>
inline std::pair<BigFloat, BigFloat> sweep_enclose<BigFloat>(
    long n, long M, PrecisionConfig p, const BigFloat& fmax_hi, int threads) {
    const int wp = p.bits + 32;
    kernel::SweepEvaluator<BigFloat> f(n, p);
    auto iv = riemann::integral_unimodal<BigFloat>(
        [&](const BigFloat& u) { return f(u); }, M, fmax_hi,
        BigFloat::pow2(-p.bits + 2, wp), BigFloat(0, wp), threads);
    iv.lo.set_precision(p.bits);
    iv.hi.set_precision(p.bits);
    return {iv.lo, iv.hi};
}

// Covers the peak-sampling gap (quadratic in the bisection tolerance) plus
// the rounding of f_value itself.
inline BigFloat inflate_peak(const BigFloat& f_value, int bits) {
    return f_value * (1L + BigFloat::pow2(-bits + 6, bits + 32));
}

}  // namespace detail

inline DeltaRecord delta_k_riemann(long k, long M, PrecisionConfig p = {},
                                   int threads = 1) {
    p.validate();
    if (k < 2) throw std::domain_error("delta_k_riemann: requires k >= 2");
    if (M < 2) throw std::invalid_argument("delta_k_riemann: requires M >= 2");
    const long n = k - 1;
    auto peak = kernel::maximize(n, p);
    BigFloat fmax_hi = detail::inflate_peak(peak.f_value, p.bits);

    DeltaRecord rec;
    rec.k = k;
    rec.M = M;
    rec.precision_bits = p.bits;
    rec.u_star = peak.u_star;
    rec.f_at_ustar = peak.f_value;
    std::pair<BigFloat, BigFloat> iv;
    if (p.use_double())
        iv = detail::sweep_enclose<double>(n, M, p, fmax_hi, threads);
    else if (p.use_long_double())
        iv = detail::sweep_enclose<long double>(n, M, p, fmax_hi, threads);
    else
        iv = detail::sweep_enclose<BigFloat>(n, M, p, fmax_hi, threads);
    rec.S_lower = std::move(iv.first);
    rec.S_upper = std::move(iv.second);
    return rec;
}

// Closed-form sandwich: with s = k - 1,
//   sqrt(2 pi) e^{1/(12s+1) - 1/(8s)} / (6 k^{3/2})
//     <= Delta_k <= sqrt(2 pi) e^{1/(12s)} / (6 s^{3/2}).
inline Enclosure delta_k_simple(long k, PrecisionConfig p = {}) {
    p.validate();
    if (k < 2) throw std::domain_error("delta_k_simple: requires k >= 2");
    const long s = k - 1;
    const int wp = p.bits + 32;
    BigFloat root = sqrt(2 * BigFloat::pi(wp));
    BigFloat lo = root * exp(BigFloat(1, wp) / (12 * s + 1) - BigFloat(1, wp) / (8 * s)) /
                  (6 * sqrt(pow(BigFloat(k, wp), 3)));
    BigFloat hi = root * exp(BigFloat(1, wp) / (12 * s)) /
                  (6 * sqrt(pow(BigFloat(s, wp), 3)));
    return enclose_outward(lo, hi, p.bits);
}

namespace detail {

// F(s) = integral_0^1 e^{(u-1/2)^2/(4s)} u(1-u) / (s+u)^{3/2} du.
// ln of the integrand has second derivative
//   1/(2s) - 1/u^2 - 1/(1-u)^2 + (3/2)/(s+u)^2  <=  1/2 - 8 + 3/2  <  -6,
// so the integrand is log-concave, hence unimodal with one interior peak;
// the peak is bracketed by bisecting the first derivative.
inline riemann::Interval<BigFloat> f_integral(long s, long M, PrecisionConfig p,
                                              int threads) {
    const int wp = p.bits + 32;
    const BigFloat half = BigFloat(1, wp) / 2;
    auto g = [&](const BigFloat& u) {
        return exp(pow(u - half, 2) / (4 * s)) * u * (1L - u) /
               sqrt(pow(s + u, 3));
    };
    auto dlng = [&](const BigFloat& u) {
        return (u - half) / (2 * s) + 1L / u - 1L / (1L - u) -
               BigFloat(3, wp) / (2 * (s + u));
    };
    const BigFloat tol = BigFloat::pow2(-(p.bits / 2 + 8), wp);
    BigFloat lo = BigFloat(1, wp) / 1024, hi = 1L - BigFloat(1, wp) / 1024;
    while (hi - lo > tol) {
        BigFloat mid = (lo + hi) / 2;
        if (dlng(mid).sign() > 0)
            lo = mid;
        else
            hi = mid;
    }
    BigFloat u_hat = (lo + hi) / 2;
    BigFloat curvature = 1L / pow(u_hat, 2) + 1L / pow(1L - u_hat, 2) + 2L;
    BigFloat fpeak_hi = g(u_hat) * (1L + 4 * curvature * pow(tol, 2) +
                                    BigFloat::pow2(-p.bits + 6, wp));
    return riemann::integral_unimodal<BigFloat>(g, M, fpeak_hi,
                                                BigFloat::pow2(-p.bits + 2, wp),
                                                BigFloat(0, wp), threads);
}

}  // namespace detail

// Envelope bounds around the F-integral: with s = k - 1,
//   sqrt(2 pi) e^{1/(12s+1) - 1/(8s)} F(s) <= Delta_k <= sqrt(2 pi) e^{1/(48s)} F(s).
inline Enclosure delta_k_general(long k, long M_inner, PrecisionConfig p = {},
                                 int threads = 1) {
    p.validate();
    if (k < 2) throw std::domain_error("delta_k_general: requires k >= 2");
    if (M_inner < 2) throw std::invalid_argument("delta_k_general: requires M >= 2");
    const long s = k - 1;
    const int wp = p.bits + 32;
    auto F = detail::f_integral(s, M_inner, p, threads);
    BigFloat root = sqrt(2 * BigFloat::pi(wp));
    BigFloat c_lo = root * exp(BigFloat(1, wp) / (12 * s + 1) - BigFloat(1, wp) / (8 * s));
    BigFloat c_hi = root * exp(BigFloat(1, wp) / (48 * s));
    return enclose_outward(c_lo * F.lo, c_hi * F.hi, p.bits);
}

// Delta(x) = integral over the partial range [0, ln x - n], n = ceil(ln x) - 1.
// Substituting u = b t maps it onto [0,1]; when the maximizer exceeds the
// range the integrand is increasing there and the boundary value caps it.
inline Enclosure delta_x(const logint::Point& pt, long M = 100000,
                         PrecisionConfig p = {}, int threads = 1) {
    p.validate();
    if (M < 2) throw std::invalid_argument("delta_x: requires M >= 2");
    if (pt.ln_x <= 1L) throw std::domain_error("delta_x: requires x > e");
    const int wp = p.bits + 32;
    BigFloat y = pt.ln_at(wp);
    const long n = ceil(y).to_long() - 1;
    BigFloat b = y - n;

    auto peak = kernel::maximize(n, p);
    BigFloat fpeak = peak.u_star <= b
                         ? peak.f_value
                         : kernel::kernel_f(n, b, p);
    BigFloat fpeak_hi = detail::inflate_peak(fpeak, p.bits);

    kernel::SweepEvaluator<BigFloat> f(n, p);
    auto iv = riemann::integral_unimodal<BigFloat>(
        [&](const BigFloat& t) { return f(b * t); }, M, fpeak_hi,
        BigFloat::pow2(-p.bits + 2, wp), BigFloat(0, wp), threads);
    return enclose_outward(iv.lo * b, iv.hi * b, p.bits);
}

inline Enclosure delta_x(const BigFloat& x, long M = 100000,
                         PrecisionConfig p = {}, int threads = 1) {
    return delta_x(logint::Point::from_value(x, p), M, p, threads);
}

}  // namespace sterr::bounds
