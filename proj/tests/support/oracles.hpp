#pragma once

// Independent oracles used only by the test suites. These deliberately take
// different algebraic routes from the library code they check.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sterr/precision.hpp"
#include "sterr/summation.hpp"

namespace sterr::oracle {

// Euler-Mascheroni constant from the harmonic sum with Euler-Maclaurin
// corrections through the B10 term: error ~ 2e-62 for N = 1e5.
inline BigFloat gamma_euler_maclaurin(int prec) {
    const long N = 100000;
    const int wp = prec + 32;
    NeumaierSum<BigFloat> h(BigFloat(0L, wp));
    for (long k = 1; k <= N; ++k) h.add(1 / BigFloat(k, wp));
    BigFloat n(N, wp);
    BigFloat g = h.value() - log(n) - 1 / (2 * n) + 1 / (12 * n * n) -
                 1 / (120 * pow(n, 4)) + 1 / (252 * pow(n, 6)) -
                 1 / (240 * pow(n, 8)) + BigFloat(5, wp) / (660 * pow(n, 10));
    g.set_precision(prec);
    return g;
}

// ln(n!) via an exact integer product: MPFR holds n! exactly as long as the
// working precision exceeds its bit length (170! needs ~1021 bits).
inline BigFloat exact_ln_factorial(long n, int prec) {
    if (n < 0) throw std::domain_error("exact_ln_factorial: n < 0");
    double bits = 0;
    for (long i = 2; i <= n; ++i) bits += std::log2(static_cast<double>(i));
    const int wp = static_cast<int>(bits) + 64;
    BigFloat f(1L, wp > prec + 64 ? wp : prec + 64);
    for (long i = 2; i <= n; ++i) f *= i;
    BigFloat r = log(f);
    r.set_precision(prec);
    return r;
}

// Classic adaptive Simpson with Richardson correction, double precision.
namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b,
                           double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_step(f, a, m, fa, flm, fm);
    const double right = simpson_step(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = detail::simpson_step(f, a, b, fa, fm, fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Romberg quadrature in MPFR for analytic integrands; absolute tolerance.
inline BigFloat romberg(const std::function<BigFloat(const BigFloat&)>& f, const BigFloat& a,
                        const BigFloat& b, int prec, const BigFloat& tol, int max_level = 22) {
    const int wp = prec + 32;
    BigFloat h = b - a;
    h.set_precision(wp);
    std::vector<BigFloat> row;
    row.push_back(h / 2 * (f(a) + f(b)));
    long points = 1;
    for (int m = 1; m <= max_level; ++m) {
        h /= 2;
        NeumaierSum<BigFloat> odd(BigFloat(0L, wp));
        for (long i = 1; i <= points; ++i) odd.add(f(a + (2 * i - 1) * h));
        std::vector<BigFloat> next;
        next.reserve(row.size() + 1);
        next.push_back(row[0] / 2 + h * odd.value());
        BigFloat pw(1L, wp);
        for (size_t j = 1; j <= row.size(); ++j) {
            pw *= 4;
            next.push_back((pw * next[j - 1] - row[j - 1]) / (pw - 1));
        }
        if (m >= 4 && abs(next.back() - row.back()) < tol) {
            BigFloat r = next.back();
            r.set_precision(prec);
            return r;
        }
        row = std::move(next);
        points *= 2;
    }
    throw std::runtime_error("romberg: did not reach tolerance");
}

// Straightforward reference series for li(x), x > 1:
// gamma + ln y + sum y^k/(k k!), y = ln x. No compensation, no reordering.
inline BigFloat li_reference(const BigFloat& x, int prec) {
    const int wp = prec + 64;
    BigFloat xw = x;
    if (xw.precision() < wp) xw.set_precision(wp);
    BigFloat y = log(xw);
    BigFloat sum(0L, wp), term(1L, wp);
    for (long k = 1; k < 100000; ++k) {
        term *= y;
        term /= k;
        BigFloat t = term / k;
        sum += t;
        if (abs(t) < abs(sum) * BigFloat::pow2(-wp + 8, wp) && k > 4) break;
    }
    BigFloat r = BigFloat::euler(wp) + log(abs(y)) + sum;
    r.set_precision(prec);
    return r;
}

}  // namespace sterr::oracle
