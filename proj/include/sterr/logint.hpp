#pragma once

// The logarithmic integral li(x), its truncated Stieltjes partial sums, the
// Stieltjes approximation li*(x), and the approximation error
// epsilon(x) = li*(x) - li(x).
//
// All evaluations are high-precision scalars (BigFloat). li uses the series
// li(x) = gamma + ln|ln x| + sum_{k>=1} (ln x)^k / (k k!), which absorbs the
// principal value analytically. epsilon() subtracts two nearly equal values
// of size ~x/ln x, losing ~1.4427 ln x bits to cancellation; the working
// precision is raised internally so the requested output precision is real.

#include <cmath>
#include <stdexcept>

#include "sterr/precision.hpp"

namespace sterr::logint {

inline constexpr long kMaxSeriesIndex = 10000;

// A point x > 0 carried together with ln x. Exponent-defined points keep
// ln x exact (the CLI's --x-exp route), so x = e^k never loses alpha = 0 to
// a ln(exp(k)) round trip.
struct Point {
    BigFloat x;
    BigFloat ln_x;
    bool exact_ln = false;

    static Point from_value(const BigFloat& x, PrecisionConfig p) {
        p.validate();
        if (x.is_nan() || x.sign() < 0)
            throw std::domain_error("Point: x must be nonnegative");
        Point pt;
        pt.x = x;
        pt.exact_ln = false;
        if (x.sign() > 0) {
            BigFloat xw = x;
            if (xw.precision() < p.bits + 64) xw.set_precision(p.bits + 64);
            pt.ln_x = log(xw);
        } else {
            pt.ln_x = BigFloat(0, p.bits + 64);
        }
        return pt;
    }

    static Point from_exponent(const BigFloat& y, PrecisionConfig p) {
        p.validate();
        if (y.is_nan()) throw std::domain_error("Point: exponent must be a number");
        Point pt;
        pt.ln_x = y;
        pt.exact_ln = true;
        BigFloat yw = y;
        if (yw.precision() < p.bits + 64) yw.set_precision(p.bits + 64);
        pt.x = exp(yw);
        return pt;
    }

    BigFloat ln_at(int wp) const {
        if (exact_ln || ln_x.precision() >= wp) {
            BigFloat y = ln_x;
            if (y.precision() < wp) y.set_precision(wp);
            return y;
        }
        BigFloat xw = x;
        xw.set_precision(wp);
        return log(xw);
    }

    BigFloat x_at(int wp) const {
        if (!exact_ln || x.precision() >= wp) {
            BigFloat xw = x;
            if (xw.precision() < wp) xw.set_precision(wp);
            return xw;
        }
        BigFloat yw = ln_x;
        yw.set_precision(wp);
        return exp(yw);
    }
};

// n_star = floor(ln x), alpha = ln x - n_star in [0,1), and the partial-error
// truncation index n_x = ceil(ln x) - 1. For x = e^m exactly: {m, 0, m-1}.
struct TruncationIndex {
    long n_star;
    BigFloat alpha;
    long n_x;
};

namespace detail {

// Inputs within 2^-40 below e are accepted; the formulas continue across the
// integer boundary by an exact identity, so the clamped index is harmless.
inline const double kDomainSlack = std::ldexp(1.0, -40);

inline BigFloat series_sum(const BigFloat& y, int wp, int out_bits) {
    // sum_{k>=1} y^k/(k k!), terminated once three consecutive terms fall
    // below 2^(-out_bits-8) of the running partial sum.
    BigFloat sum(0, wp), term(1, wp);
    const BigFloat cut = BigFloat::pow2(-out_bits - 8, wp);
    const double yd = std::fabs(y.to_double());
    const long max_iter = 200 + 8 * static_cast<long>(yd + out_bits);
    int consecutive_small = 0;
    for (long k = 1; k <= max_iter; ++k) {
        term *= y;
        term /= k;
        BigFloat t = term / k;
        sum += t;
        if (abs(t) <= abs(sum) * cut) {
            if (++consecutive_small >= 3) return sum;
        } else {
            consecutive_small = 0;
        }
    }
    throw std::runtime_error("li series did not terminate");
}

inline BigFloat li_core(const Point& pt, int out_bits) {
    const double yd = pt.ln_x.to_double();
    int wp = out_bits + 64;
    if (yd < 0) wp += static_cast<int>(std::ceil(-yd * 1.4427)) + 16;
    BigFloat y = pt.ln_at(wp);
    if (y.is_zero()) throw std::domain_error("li: x = 1 is outside the domain");
    return BigFloat::euler(wp) + log(abs(y)) + series_sum(y, wp, out_bits);
}

inline BigFloat li_n_core(const BigFloat& x, const BigFloat& y, long n) {
    // (x/y) * sum_{k=0}^{n-1} k!/y^k via the term recurrence t_k = t_{k-1} k/y.
    const int wp = x.precision();
    if (n == 0) return BigFloat(0, wp);
    BigFloat sum(1, wp), t(1, wp);
    for (long k = 1; k < n; ++k) {
        t *= k;
        t /= y;
        sum += t;
    }
    return x / y * sum;
}

inline BigFloat li_star_core(const Point& pt, int wp) {
    BigFloat y = pt.ln_at(wp);
    BigFloat x = pt.x_at(wp);
    long n_star = floor(y).to_long();
    if (n_star < 1) n_star = 1;
    BigFloat alpha = y - n_star;
    BigFloat fact(1, wp);
    for (long i = 2; i <= n_star; ++i) fact *= i;
    return alpha * x * fact / pow(y, n_star + 1) + li_n_core(x, y, n_star);
}

inline void require_ln_ge_1(const Point& pt, const char* who) {
    if (pt.ln_x < 1.0 - kDomainSlack)
        throw std::domain_error(std::string(who) + ": requires x >= e");
}

}  // namespace detail

inline TruncationIndex truncation_index(const Point& pt) {
    detail::require_ln_ge_1(pt, "truncation_index");
    TruncationIndex ti;
    ti.n_star = floor(pt.ln_x).to_long();
    if (ti.n_star < 1) ti.n_star = 1;
    ti.alpha = pt.ln_x - ti.n_star;
    ti.n_x = ceil(pt.ln_x).to_long() - 1;
    return ti;
}

inline BigFloat li(const Point& pt, PrecisionConfig p) {
    p.validate();
    if (pt.x.is_zero()) return BigFloat(0, p.bits);
    BigFloat r = detail::li_core(pt, p.bits);
    r.set_precision(p.bits);
    return r;
}

inline BigFloat li(const BigFloat& x, PrecisionConfig p) {
    return li(Point::from_value(x, p), p);
}

inline BigFloat li_n(const Point& pt, long n, PrecisionConfig p) {
    p.validate();
    if (n < 0 || n > kMaxSeriesIndex)
        throw std::domain_error("li_n: n out of range [0, 1e4]");
    if (pt.ln_x.sign() <= 0)
        throw std::domain_error("li_n: requires x > 1");
    const int wp = p.bits + 64;
    BigFloat r = detail::li_n_core(pt.x_at(wp), pt.ln_at(wp), n);
    r.set_precision(p.bits);
    return r;
}

inline BigFloat li_n(const BigFloat& x, long n, PrecisionConfig p) {
    return li_n(Point::from_value(x, p), n, p);
}

inline BigFloat li_star(const Point& pt, PrecisionConfig p) {
    p.validate();
    detail::require_ln_ge_1(pt, "li_star");
    BigFloat r = detail::li_star_core(pt, p.bits + 64);
    r.set_precision(p.bits);
    return r;
}

inline BigFloat li_star(const BigFloat& x, PrecisionConfig p) {
    return li_star(Point::from_value(x, p), p);
}

inline BigFloat epsilon(const Point& pt, PrecisionConfig p) {
    p.validate();
    detail::require_ln_ge_1(pt, "epsilon");
    const double yd = pt.ln_x.to_double();
    const int wp = p.bits + 96 + static_cast<int>(std::ceil(1.4427 * (yd > 0 ? yd : 0)));
    BigFloat r = detail::li_star_core(pt, wp) - detail::li_core(pt, wp - 64);
    r.set_precision(p.bits);
    return r;
}

inline BigFloat epsilon(const BigFloat& x, PrecisionConfig p) {
    return epsilon(Point::from_value(x, p), p);
}

inline BigFloat epsilon_k(long k, PrecisionConfig p) {
    if (k < 1) throw std::domain_error("epsilon_k: requires k >= 1");
    return epsilon(Point::from_exponent(BigFloat(k, p.bits + 64), p), p);
}

}  // namespace sterr::logint
