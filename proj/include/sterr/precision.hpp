#pragma once

// Configurable-precision real scalar backed by MPFR, plus the precision
// configuration shared by every evaluator in the library.
//
// Precision model: a BigFloat carries its own significand width in bits.
// Binary operations round to the wider of the two operand precisions
// (round-to-nearest). Sweep drivers treat 53 and 64 bits as requests for
// the native double / long double fast paths; BigFloat itself accepts any
// precision >= 2 bits.

#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace sterr {

inline int& default_precision() {
    static int bits = 192;
    return bits;
}

// Significant decimal digits needed so that a decimal serialization at this
// precision round-trips exactly: ceil(bits * log10 2) + 2.
inline int decimal_digits_for(int bits) {
    return static_cast<int>(std::ceil(bits * 0.30102999566398119521)) + 2;
}

struct PrecisionConfig {
    int bits = 192;

    PrecisionConfig() = default;
    explicit PrecisionConfig(int b) : bits(b) { validate(); }

    void validate() const {
        if (bits < 53)
            throw std::invalid_argument("PrecisionConfig: need at least 53 bits, got " +
                                        std::to_string(bits));
    }

    static PrecisionConfig fast() { return PrecisionConfig(53); }

    bool use_double() const { return bits == 53; }
    bool use_long_double() const { return bits == 64; }
    int digits() const { return decimal_digits_for(bits); }
};

class BigFloat {
  public:
    BigFloat() { mpfr_init2(v_, norm(0)); }  // NaN at the default precision

    // NaN at an explicit precision; the only way to pick a precision without
    // supplying a value.
    static BigFloat make(int prec) {
        BigFloat r(tag{}, prec);
        return r;
    }

    BigFloat(double v, int prec = 0) {
        mpfr_init2(v_, norm(prec));
        mpfr_set_d(v_, v, MPFR_RNDN);
    }
    BigFloat(long double v, int prec = 0) {
        mpfr_init2(v_, norm(prec));
        mpfr_set_ld(v_, v, MPFR_RNDN);
    }
    BigFloat(long v, int prec = 0) {
        mpfr_init2(v_, norm(prec));
        mpfr_set_si(v_, v, MPFR_RNDN);
    }
    BigFloat(unsigned long v, int prec = 0) {
        mpfr_init2(v_, norm(prec));
        mpfr_set_ui(v_, v, MPFR_RNDN);
    }
    BigFloat(int v, int prec = 0) : BigFloat(static_cast<long>(v), prec) {}

    static BigFloat from_string(std::string_view s, int prec = 0) {
        BigFloat r = make(prec);
        std::string z(s);
        if (mpfr_set_str(r.v_, z.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("BigFloat: unparseable decimal \"" + z + "\"");
        return r;
    }

    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }

    // Re-rounds the value when shrinking; exact when growing.
    void set_precision(int prec) { mpfr_prec_round(v_, norm(prec), MPFR_RNDN); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    std::string to_string(int sig_digits = 0) const {
        if (sig_digits <= 0) sig_digits = decimal_digits_for(precision());
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Re", sig_digits - 1, v_);
        std::string r(s);
        mpfr_free_str(s);
        return r;
    }
    std::string to_fixed(int decimals) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rf", decimals, v_);
        std::string r(s);
        mpfr_free_str(s);
        return r;
    }
    // printf %g style: fixed for moderate exponents, scientific otherwise.
    std::string to_general(int sig_digits) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", sig_digits, v_);
        std::string r(s);
        mpfr_free_str(s);
        return r;
    }

    // 2^e at the given precision (exact).
    static BigFloat pow2(long e, int prec = 0) {
        BigFloat r = make(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }
    static BigFloat pi(int prec = 0) {
        BigFloat r = make(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    // Euler-Mascheroni constant, correctly rounded by MPFR at any precision.
    static BigFloat euler(int prec = 0) {
        BigFloat r = make(prec);
        mpfr_const_euler(r.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat e(int prec = 0) {
        BigFloat r = make(prec);
        mpfr_set_ui(r.v_, 1, MPFR_RNDN);
        mpfr_exp(r.v_, r.v_, MPFR_RNDN);
        return r;
    }

    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
    BigFloat& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
    BigFloat& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
    BigFloat& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }
    BigFloat& operator+=(double o) { mpfr_add_d(v_, v_, o, MPFR_RNDN); return *this; }
    BigFloat& operator-=(double o) { mpfr_sub_d(v_, v_, o, MPFR_RNDN); return *this; }
    BigFloat& operator*=(double o) { mpfr_mul_d(v_, v_, o, MPFR_RNDN); return *this; }
    BigFloat& operator/=(double o) { mpfr_div_d(v_, v_, o, MPFR_RNDN); return *this; }
    BigFloat& operator+=(int o) { return *this += static_cast<long>(o); }
    BigFloat& operator-=(int o) { return *this -= static_cast<long>(o); }
    BigFloat& operator*=(int o) { return *this *= static_cast<long>(o); }
    BigFloat& operator/=(int o) { return *this /= static_cast<long>(o); }

    BigFloat operator-() const {
        BigFloat r = make(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend void swap(BigFloat& a, BigFloat& b) noexcept { mpfr_swap(a.v_, b.v_); }

  private:
    struct tag {};
    BigFloat(tag, int prec) { mpfr_init2(v_, norm(prec)); }

    static mpfr_prec_t norm(int prec) {
        if (prec <= 0) prec = default_precision();
        if (prec < MPFR_PREC_MIN) prec = MPFR_PREC_MIN;
        return static_cast<mpfr_prec_t>(prec);
    }
    mpfr_t v_;
};

namespace detail {
inline int join_prec(const BigFloat& a, const BigFloat& b) {
    return a.precision() > b.precision() ? a.precision() : b.precision();
}
}  // namespace detail

#define STERR_BINOP(op, fn)                                                          \
    inline BigFloat operator op(const BigFloat& a, const BigFloat& b) {              \
        BigFloat r = BigFloat::make(detail::join_prec(a, b));                        \
        fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);                                    \
        return r;                                                                    \
    }
STERR_BINOP(+, mpfr_add)
STERR_BINOP(-, mpfr_sub)
STERR_BINOP(*, mpfr_mul)
STERR_BINOP(/, mpfr_div)
#undef STERR_BINOP

#define STERR_BINOP_SI(op, fn, rexpr)                                                \
    inline BigFloat operator op(const BigFloat& a, long b) {                         \
        BigFloat r = BigFloat::make(a.precision());                                  \
        fn(r.raw(), a.raw(), b, MPFR_RNDN);                                          \
        return r;                                                                    \
    }                                                                                \
    inline BigFloat operator op(long a, const BigFloat& b) {                         \
        BigFloat r = BigFloat::make(b.precision());                                  \
        rexpr;                                                                       \
        return r;                                                                    \
    }                                                                                \
    inline BigFloat operator op(const BigFloat& a, int b) {                          \
        return a op static_cast<long>(b);                                            \
    }                                                                                \
    inline BigFloat operator op(int a, const BigFloat& b) {                          \
        return static_cast<long>(a) op b;                                            \
    }
STERR_BINOP_SI(+, mpfr_add_si, mpfr_add_si(r.raw(), b.raw(), a, MPFR_RNDN))
STERR_BINOP_SI(*, mpfr_mul_si, mpfr_mul_si(r.raw(), b.raw(), a, MPFR_RNDN))
STERR_BINOP_SI(-, mpfr_sub_si, mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN))
STERR_BINOP_SI(/, mpfr_div_si, mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN))
#undef STERR_BINOP_SI

#define STERR_BINOP_D(op, fn, rexpr)                                                 \
    inline BigFloat operator op(const BigFloat& a, double b) {                       \
        BigFloat r = BigFloat::make(a.precision());                                  \
        fn(r.raw(), a.raw(), b, MPFR_RNDN);                                          \
        return r;                                                                    \
    }                                                                                \
    inline BigFloat operator op(double a, const BigFloat& b) {                       \
        BigFloat r = BigFloat::make(b.precision());                                  \
        rexpr;                                                                       \
        return r;                                                                    \
    }
STERR_BINOP_D(+, mpfr_add_d, mpfr_add_d(r.raw(), b.raw(), a, MPFR_RNDN))
STERR_BINOP_D(*, mpfr_mul_d, mpfr_mul_d(r.raw(), b.raw(), a, MPFR_RNDN))
STERR_BINOP_D(-, mpfr_sub_d, mpfr_d_sub(r.raw(), a, b.raw(), MPFR_RNDN))
STERR_BINOP_D(/, mpfr_div_d, mpfr_d_div(r.raw(), a, b.raw(), MPFR_RNDN))
#undef STERR_BINOP_D

inline bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
inline bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
inline bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
inline bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
inline bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
inline bool operator<(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) < 0; }
inline bool operator>(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) > 0; }
inline bool operator<=(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) <= 0; }
inline bool operator>=(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) >= 0; }
inline bool operator<(const BigFloat& a, long b) { return mpfr_cmp_si(a.raw(), b) < 0; }
inline bool operator>(const BigFloat& a, long b) { return mpfr_cmp_si(a.raw(), b) > 0; }
inline bool operator<=(const BigFloat& a, long b) { return mpfr_cmp_si(a.raw(), b) <= 0; }
inline bool operator>=(const BigFloat& a, long b) { return mpfr_cmp_si(a.raw(), b) >= 0; }
inline bool operator<(const BigFloat& a, int b) { return a < static_cast<long>(b); }
inline bool operator>(const BigFloat& a, int b) { return a > static_cast<long>(b); }
inline bool operator<=(const BigFloat& a, int b) { return a <= static_cast<long>(b); }
inline bool operator>=(const BigFloat& a, int b) { return a >= static_cast<long>(b); }

#define STERR_UNARY(name, fn)                                                        \
    inline BigFloat name(const BigFloat& x) {                                        \
        BigFloat r = BigFloat::make(x.precision());                                  \
        fn(r.raw(), x.raw(), MPFR_RNDN);                                             \
        return r;                                                                    \
    }
STERR_UNARY(exp, mpfr_exp)
STERR_UNARY(expm1, mpfr_expm1)
STERR_UNARY(log, mpfr_log)
STERR_UNARY(log1p, mpfr_log1p)
STERR_UNARY(sqrt, mpfr_sqrt)
STERR_UNARY(abs, mpfr_abs)
#undef STERR_UNARY

inline BigFloat floor(const BigFloat& x) {
    BigFloat r = BigFloat::make(x.precision());
    mpfr_rint(r.raw(), x.raw(), MPFR_RNDD);
    return r;
}
inline BigFloat ceil(const BigFloat& x) {
    BigFloat r = BigFloat::make(x.precision());
    mpfr_rint(r.raw(), x.raw(), MPFR_RNDU);
    return r;
}

inline BigFloat pow(const BigFloat& x, const BigFloat& y) {
    BigFloat r = BigFloat::make(detail::join_prec(x, y));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
inline BigFloat pow(const BigFloat& x, long n) {
    BigFloat r = BigFloat::make(x.precision());
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}
inline BigFloat pow(const BigFloat& x, int n) { return pow(x, static_cast<long>(n)); }
inline BigFloat min(const BigFloat& a, const BigFloat& b) {
    BigFloat r = BigFloat::make(detail::join_prec(a, b));
    mpfr_min(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline BigFloat max(const BigFloat& a, const BigFloat& b) {
    BigFloat r = BigFloat::make(detail::join_prec(a, b));
    mpfr_max(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

// Rounds a BigFloat into the scalar type a fast path runs on.
template <typename Real>
Real to_real(const BigFloat& x);

template <>
inline double to_real<double>(const BigFloat& x) { return x.to_double(); }

template <>
inline long double to_real<long double>(const BigFloat& x) { return x.to_long_double(); }

template <>
inline BigFloat to_real<BigFloat>(const BigFloat& x) { return x; }

}  // namespace sterr
