#pragma once

// Single source of truth for the reference constants the verification suite
// reproduces. Every literal is quoted to the full precision of its source;
// the verifier recomputes each cell from scratch and diffs against these.

#include "sterr/enclosure.hpp"
#include "sterr/precision.hpp"

namespace sterr::golden {

// epsilon_1 = e - li(e), quoted to 18 decimals.
inline constexpr const char* kEpsilon1 = "0.823164012103108479";

// Accumulated sweep width sum_{k=2}^{1000} delta_k at M = 10^6.
inline constexpr const char* kAccumulatedDelta = "2.39422555282981724e-6";

// Table 1: certified enclosures [eps_lo, eps_hi] for epsilon_k, M = 10^6.
struct Table1Row {
    long k;
    const char* lower;
    const char* upper;
};
inline constexpr Table1Row kTable1[] = {
    {1, "0.8231640121031085", "0.8231640121031085"},
    {2, "0.5875573613276722", "0.5875580750651299"},
    {5, "0.3730720858991260", "0.3730734415998585"},
    {10, "0.2640420034092351", "0.2640436853557264"},
    {50, "0.1181488169851442", "0.1181509360842480"},
    {100, "0.0835484190371273", "0.0835506419001847"},
    {200, "0.0590789874390479", "0.0590812836969822"},
    {500, "0.0373650103755665", "0.0373673717698551"},
    {1000, "0.0264208377545706", "0.0264232319801236"},
};

// Table 2: lower Riemann sums and sweep widths delta_k at M = 10^6.
struct Table2Row {
    long k;
    const char* S_lower;
    const char* delta;
};
inline constexpr Table2Row kTable2[] = {
    {2, "0.23560593703797863551763", "7.1373745771830562e-7"},
    {5, "0.04381091597775917112489", "1.3102433738077051e-7"},
    {10, "0.01425767373640696514259", "4.2683260542898670e-8"},
    {50, "0.00119922512965914230751", "3.5959328273767800e-9"},
    {100, "0.00042085723494096768070", "1.2622623535039300e-9"},
    {200, "0.00014824785827815327942", "4.4468903335579000e-10"},
    {500, "0.00003742143750172932936", "1.1225888313116000e-10"},
    {1000, "0.00001322076646303534214", "3.9661368685840000e-11"},
};

// Table 3: the s-anchored closed-form factors and shifts.
struct Table3Row {
    long s;
    const char* kappa_lo;
    const char* tau_lo;
    const char* kappa_hi;
    const char* tau_hi;
};
inline constexpr Table3Row kTable3[] = {
    {2, "1.0425469052", "-0.0283980643", "0.9777512372", "0.0098850932"},
    {5, "1.0168063304", "-0.0068739508", "0.9914303730", "0.0026095394"},
    {10, "1.0083681522", "-0.0023908648", "0.9957734200", "0.0009386202"},
    {50, "1.0016680563", "-0.0002118766", "0.9991642430", "0.0000861021"},
    {100, "1.0008336807", "-0.0000755144", "0.9995827265", "0.0000312311"},
    {200, "1.0004167535", "-0.0000274301", "0.9997915149", "0.0000118063"},
    {500, "1.0001666806", "-0.0000078260", "0.9999166424", "0.0000038785"},
    {1000, "1.0000833368", "-0.0000035462", "0.9999583273", "0.0000021511"},
};

// Table 4: gaps between the sweep sums and the closed-form bracket,
// S_lower - Delta_lower and Delta_upper - S_upper, both positive.
struct Table4Row {
    long k;
    const char* lower_gap;
    const char* upper_gap;
};
inline constexpr Table4Row kTable4[] = {
    {2, "0.09483462840553488759632", "0.21847075294803794398568"},
    {5, "0.00684724231125105609053", "0.00950973357118596596127"},
    {10, "0.00110872085707076906136", "0.00135923160248245002146"},
    {50, "0.00001859700335527414601", "0.00002083681129835270561"},
    {100, "0.00000326194418089222450", "0.00000361586030275616978"},
    {200, "0.00000057431975072027067", "0.00000063326519249957101"},
    {500, "0.00000005795042826999713", "0.00000006369861681718348"},
    {1000, "0.00000001022656457829113", "0.00000001123003124923371"},
};

// Conjectured band: epsilon_k in sqrt(2 pi / k)/3 +/- 1/(12 k^{3/2}).
inline BigFloat band_center(long k, int bits = 256) {
    BigFloat kk(k, bits + 32);
    BigFloat c = sqrt(2 * BigFloat::pi(bits + 32) / kk) / 3;
    c.set_precision(bits);
    return c;
}

inline BigFloat band_halfwidth(long k, int bits = 256) {
    BigFloat kk(k, bits + 32);
    BigFloat h = 1L / (12 * kk * sqrt(kk));
    h.set_precision(bits);
    return h;
}

inline Enclosure band(long k, int bits = 256) {
    BigFloat c = band_center(k, bits + 32);
    BigFloat h = band_halfwidth(k, bits + 32);
    BigFloat lo = c - h;
    BigFloat hi = c + h;
    lo.set_precision(bits);
    hi.set_precision(bits);
    return Enclosure(lo, hi);
}

}  // namespace sterr::golden
