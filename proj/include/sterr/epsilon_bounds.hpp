#pragma once

// Certified enclosures for epsilon_n and epsilon(x), telescoped from the
// Delta_k enclosures:
//
//   epsilon_n = epsilon_1 - sum_{k=2}^{n} Delta_k,
//
// anchored at epsilon_1 = e - li(e). The anchor is a stored 18-digit decimal
// literal, padded by 1e-18 on each side (the literal sits within 9e-19 of
// the true value, so the padded interval is a genuine enclosure). The
// kappa/tau machinery converts one telescoped bound at index s into simple
// closed-form bounds for every n > s.

#include <map>
#include <stdexcept>
#include <string>

#include "sterr/delta_bounds.hpp"
#include "sterr/enclosure.hpp"
#include "sterr/logint.hpp"
#include "sterr/summation.hpp"

namespace sterr::bounds {

inline constexpr const char* kEpsilon1Digits = "0.823164012103108479";
inline constexpr const char* kEpsilon1Pad = "1e-18";

// Explicit additive constants for the x > e^1000 closed-form branch.
inline constexpr const char* kExplicitLowerShift = "0.0000035462";
inline constexpr const char* kExplicitUpperShift = "0.0000021511";

inline Enclosure epsilon_1_anchor(int bits = 256) {
    BigFloat v = BigFloat::from_string(kEpsilon1Digits, bits);
    BigFloat pad = BigFloat::from_string(kEpsilon1Pad, bits);
    return Enclosure(v - pad, v + pad);
}

class MissingDeltaError : public std::runtime_error {
  public:
    explicit MissingDeltaError(long k)
        : std::runtime_error("delta cache is missing k = " + std::to_string(k)),
          k_(k) {}

    long missing_k() const { return k_; }

  private:
    long k_;
};

struct EpsilonBound {
    enum class Method { riemann_telescope, simple_s, explicit_form };

    long n = 0;
    BigFloat lo;
    BigFloat hi;
    Method method = Method::riemann_telescope;
    BigFloat accumulated_delta;

    Enclosure enclosure() const { return Enclosure(lo, hi); }
};

struct KappaTau {
    long s = 0;
    BigFloat kappa_lo;
    BigFloat kappa_hi;
    BigFloat tau_lo;
    BigFloat tau_hi;
};

inline EpsilonBound epsilon_n_riemann(long n, const DeltaMap& deltas,
                                      PrecisionConfig p = {}) {
    p.validate();
    if (n < 1) throw std::domain_error("epsilon_n_riemann: requires n >= 1");
    const int wp = p.bits + 64;
    Enclosure anchor = epsilon_1_anchor(wp);

    NeumaierSum<BigFloat> upper_sum{BigFloat(0, wp)};
    NeumaierSum<BigFloat> lower_sum{BigFloat(0, wp)};
    NeumaierSum<BigFloat> width_sum{BigFloat(0, wp)};
    long uniform_M = 0;
    for (long k = 2; k <= n; ++k) {
        auto it = deltas.find(k);
        if (it == deltas.end()) throw MissingDeltaError(k);
        const DeltaRecord& rec = it->second;
        if (uniform_M == 0) uniform_M = rec.M;
        if (rec.M != uniform_M)
            throw std::invalid_argument("epsilon_n_riemann: cache mixes M values");
        upper_sum.add(rec.S_upper);
        lower_sum.add(rec.S_lower);
        width_sum.add(rec.S_upper - rec.S_lower);
    }

    EpsilonBound eb;
    eb.n = n;
    eb.method = EpsilonBound::Method::riemann_telescope;
    eb.lo = anchor.lo - upper_sum.value();
    eb.hi = anchor.hi - lower_sum.value();
    eb.accumulated_delta = width_sum.value();
    eb.lo.set_precision(p.bits);
    eb.hi.set_precision(p.bits);
    eb.accumulated_delta.set_precision(p.bits);
    return eb;
}

inline KappaTau kappa_tau(long s, const EpsilonBound& eps_s, PrecisionConfig p = {}) {
    p.validate();
    if (s < 1) throw std::domain_error("kappa_tau: requires s >= 1");
    if (eps_s.n != s) throw std::invalid_argument("kappa_tau: bound is for a different index");
    const int wp = p.bits + 32;
    KappaTau kt;
    kt.s = s;
    kt.kappa_lo = exp(BigFloat(1, wp) / (12 * s));
    kt.kappa_hi = exp(BigFloat(1, wp) / (12 * s + 1) - BigFloat(1, wp) / (8 * s));
    BigFloat root = sqrt(2 * BigFloat::pi(wp) / s);
    kt.tau_lo = eps_s.lo - kt.kappa_lo / 3 * root;
    kt.tau_hi = eps_s.hi - kt.kappa_hi / 3 * root;
    kt.kappa_lo.set_precision(p.bits);
    kt.kappa_hi.set_precision(p.bits);
    kt.tau_lo.set_precision(p.bits);
    kt.tau_hi.set_precision(p.bits);
    return kt;
}

inline EpsilonBound epsilon_n_simple(long n, long s, const KappaTau& kt,
                                     PrecisionConfig p = {}) {
    p.validate();
    if (s < 1 || n <= s) throw std::domain_error("epsilon_n_simple: requires n > s >= 1");
    if (kt.s != s) throw std::invalid_argument("epsilon_n_simple: kappa/tau is for a different s");
    const int wp = p.bits + 32;
    BigFloat root_n = sqrt(2 * BigFloat::pi(wp) / n);
    EpsilonBound eb;
    eb.n = n;
    eb.method = EpsilonBound::Method::simple_s;
    eb.lo = kt.tau_lo + kt.kappa_lo / 3 * root_n;
    eb.hi = kt.tau_hi + kt.kappa_hi / 3 * root_n;
    eb.accumulated_delta = BigFloat(0, p.bits);
    eb.lo.set_precision(p.bits);
    eb.hi.set_precision(p.bits);
    return eb;
}

// Sandwich for non-integer arguments: epsilon_{m+1} < epsilon(x) <= epsilon_m
// with m = floor(ln x). Beyond e^1000 the closed form with the explicit
// additive constants takes over.
inline Enclosure epsilon_x_bounds(const logint::Point& pt, const DeltaMap& deltas,
                                  PrecisionConfig p = {}) {
    p.validate();
    logint::detail::require_ln_ge_1(pt, "epsilon_x_bounds");
    const int wp = p.bits + 32;
    long m = floor(pt.ln_x).to_long();
    if (m < 1) m = 1;
    if (pt.ln_x <= 1000L) {
        EpsilonBound lower = epsilon_n_riemann(m + 1, deltas, p);
        EpsilonBound upper = epsilon_n_riemann(m, deltas, p);
        return Enclosure(lower.lo, upper.hi);
    }
    BigFloat lo = sqrt(2 * BigFloat::pi(wp) / (m + 1)) / 3 -
                  BigFloat::from_string(kExplicitLowerShift, wp);
    BigFloat hi = sqrt(2 * BigFloat::pi(wp) / m) / 3 +
                  BigFloat::from_string(kExplicitUpperShift, wp);
    return enclose_outward(lo, hi, p.bits);
}

inline Enclosure epsilon_x_bounds(const BigFloat& x, const DeltaMap& deltas,
                                  PrecisionConfig p = {}) {
    return epsilon_x_bounds(logint::Point::from_value(x, p), deltas, p);
}

// |1/sqrt(floor(ln x)) - 1/sqrt(ln x)|, the grid-to-continuum gap of the
// band center. Always <= 1/(2 floor(ln x)^{3/2}).
inline BigFloat floor_root_gap(const logint::Point& pt, PrecisionConfig p = {}) {
    p.validate();
    logint::detail::require_ln_ge_1(pt, "floor_root_gap");
    const int wp = p.bits + 32;
    BigFloat y = pt.ln_at(wp);
    long m = floor(pt.ln_x).to_long();
    if (m < 1) m = 1;
    BigFloat gap = abs(1L / sqrt(BigFloat(m, wp)) - 1L / sqrt(y));
    gap.set_precision(p.bits);
    return gap;
}

inline BigFloat floor_root_gap(const BigFloat& x, PrecisionConfig p = {}) {
    return floor_root_gap(logint::Point::from_value(x, p), p);
}

}  // namespace sterr::bounds
