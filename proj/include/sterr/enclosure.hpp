#pragma once

// Closed-interval enclosure [lo, hi]. Built by computing at precision p and
// widening outward by an explicitly tracked error budget; no directed
// rounding is used anywhere in the library.

#include <stdexcept>

#include "sterr/precision.hpp"

namespace sterr {

struct Enclosure {
    BigFloat lo;
    BigFloat hi;

    Enclosure() = default;
    Enclosure(BigFloat l, BigFloat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo.is_nan() || hi.is_nan() || hi < lo)
            throw std::invalid_argument("Enclosure: requires lo <= hi");
    }

    static Enclosure point(const BigFloat& x) { return Enclosure(x, x); }

    BigFloat width() const { return hi - lo; }
    BigFloat midpoint() const { return (lo + hi) / 2; }

    bool contains(const BigFloat& x) const { return lo <= x && x <= hi; }
    bool contains(const Enclosure& o) const { return lo <= o.lo && o.hi <= hi; }
    bool strictly_inside(const Enclosure& outer) const {
        return outer.lo < lo && hi < outer.hi;
    }
};

// [x - budget, x + budget]; budget must be nonnegative.
inline Enclosure widen_outward(const BigFloat& x, const BigFloat& budget) {
    if (budget.is_nan() || budget.sign() < 0)
        throw std::invalid_argument("widen_outward: negative budget");
    return Enclosure(x - budget, x + budget);
}

// Rounds endpoints computed with >= 32 guard bits down to `bits`, pushed
// outward by a couple of ulp so containment survives the rounding.
inline Enclosure enclose_outward(BigFloat lo, BigFloat hi, int bits) {
    lo.set_precision(bits);
    hi.set_precision(bits);
    BigFloat pad = (abs(lo) + abs(hi) + BigFloat::pow2(-bits, bits)) *
                   BigFloat::pow2(-bits + 1, bits + 8);
    return Enclosure(lo - pad, hi + pad);
}

}  // namespace sterr
