#pragma once

// Check registry that reproduces the golden tables and certifies the band,
// positivity, monotonicity, and grid inequalities. Each check returns a
// CheckResult with the minimal slack observed ("margin", negative on fail)
// and the two sides of the binding comparison as decimal strings. A check
// that passes with margin below ten times the certified enclosure width is
// flagged as a warning: the pass is real but precision-limited.

#include <algorithm>
#include <ctime>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sterr/cache.hpp"
#include "sterr/delta_bounds.hpp"
#include "sterr/epsilon_bounds.hpp"
#include "sterr/golden.hpp"
#include "sterr/logint.hpp"
#include "sterr/stirling.hpp"
#include "sterr/version.hpp"

namespace sterr::verify {

enum class Status { pass, fail, skipped };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "skipped";
    }
}

struct CheckResult {
    std::string name;
    Status status = Status::skipped;
    BigFloat margin{BigFloat(0, 64)};
    std::string lhs;
    std::string rhs;
    std::string detail;
    bool warning = false;
};

struct ReportMetadata {
    int precision_bits = 192;
    long M = 1000000;
    std::string timestamp;
    std::string tool_version;
};

inline const std::vector<std::string>& registry() {
    static const std::vector<std::string> names = {
        "anchor",   "conjecture", "positivity", "monotonicity", "table1",
        "table2",   "table3",     "table4",     "inequalities"};
    return names;
}

namespace detail {

inline std::string fmt(const BigFloat& v, int digits = 24) { return v.to_string(digits); }

inline CheckResult finish(CheckResult r, const BigFloat& width) {
    if (r.status == Status::pass && width > BigFloat(0, 64) &&
        r.margin < BigFloat(10, 64) * width) {
        r.warning = true;
        if (!r.detail.empty()) r.detail += "; ";
        r.detail += "margin within 10x of the enclosure width";
    }
    return r;
}

// Running telescoped enclosures for epsilon_n, n = 1..k_max, identical to
// calling epsilon_n_riemann at every prefix but in a single pass.
struct Prefix {
    long n;
    BigFloat lo, hi;
};

inline std::vector<Prefix> epsilon_prefixes(long k_max, const bounds::DeltaMap& deltas,
                                            PrecisionConfig p = {}) {
    p.validate();
    const int wp = p.bits + 64;
    Enclosure anchor = bounds::epsilon_1_anchor(wp);
    std::vector<Prefix> out;
    out.push_back({1, anchor.lo, anchor.hi});
    NeumaierSum<BigFloat> lower_sum{BigFloat(0, wp)};
    NeumaierSum<BigFloat> upper_sum{BigFloat(0, wp)};
    long M_seen = -1;
    for (long n = 2; n <= k_max; ++n) {
        auto it = deltas.find(n);
        if (it == deltas.end()) throw bounds::MissingDeltaError(n);
        const auto& rec = it->second;
        if (M_seen < 0) M_seen = rec.M;
        if (rec.M != M_seen)
            throw std::invalid_argument("epsilon_prefixes: cache mixes M values");
        lower_sum.add(rec.S_lower);
        upper_sum.add(rec.S_upper);
        out.push_back({n, anchor.lo - upper_sum.value(), anchor.hi - lower_sum.value()});
    }
    return out;
}

}  // namespace detail

// e - li(e) against the stored 18-digit decimal, to absolute 1e-15.
inline CheckResult verify_anchor(PrecisionConfig p = {}) {
    p.validate();
    if (p.bits < 192) p.bits = 192;
    CheckResult r;
    r.name = "anchor";
    BigFloat computed =
        logint::epsilon(logint::Point::from_exponent(BigFloat(1, p.bits), p), p);
    BigFloat target = BigFloat::from_string(golden::kEpsilon1, p.bits + 32);
    BigFloat tol = BigFloat::from_string("1e-15", 96);
    BigFloat err = abs(computed - target);
    r.margin = tol - err;
    r.status = err <= tol ? Status::pass : Status::fail;
    r.lhs = detail::fmt(computed);
    r.rhs = std::string(golden::kEpsilon1);
    if (r.status == Status::fail)
        r.detail = "|e - li(e) - " + r.rhs + "| = " + detail::fmt(err) + " exceeds 1e-15";
    return detail::finish(std::move(r), BigFloat::from_string("2e-18", 64));
}

// Certified epsilon_k enclosures strictly inside the conjectured band
// sqrt(2 pi / k)/3 +/- 1/(12 k^{3/2}) for 1 <= k <= k_max.
inline CheckResult verify_conjecture_band(long k_max, const bounds::DeltaMap& deltas,
                                          PrecisionConfig p = {}) {
    CheckResult r;
    r.name = "conjecture";
    if (k_max < 1) return r;
    auto prefixes = detail::epsilon_prefixes(k_max, deltas, p);
    bool have_margin = false;
    BigFloat width_at_min{BigFloat(0, 64)};
    long first_bad = 0, bad_count = 0;
    for (const auto& pre : prefixes) {
        Enclosure band = golden::band(pre.n);
        BigFloat slack = min(pre.lo - band.lo, band.hi - pre.hi);
        if (!have_margin || slack < r.margin) {
            have_margin = true;
            r.margin = slack;
            width_at_min = pre.hi - pre.lo;
            if (pre.lo - band.lo <= band.hi - pre.hi) {
                r.lhs = detail::fmt(band.lo);
                r.rhs = detail::fmt(pre.lo);
                r.detail = "binding at k = " + std::to_string(pre.n) +
                           ": band_lo < eps_lo requires " + r.lhs + " < " + r.rhs;
            } else {
                r.lhs = detail::fmt(pre.hi);
                r.rhs = detail::fmt(band.hi);
                r.detail = "binding at k = " + std::to_string(pre.n) +
                           ": eps_hi < band_hi requires " + r.lhs + " < " + r.rhs;
            }
        }
        if (slack <= BigFloat(0, 64)) {
            if (first_bad == 0) first_bad = pre.n;
            ++bad_count;
        }
    }
    r.status = r.margin > BigFloat(0, 64) ? Status::pass : Status::fail;
    if (r.status == Status::fail)
        r.detail += "; first violation at k = " + std::to_string(first_bad) + ", " +
                    std::to_string(bad_count) + " of " + std::to_string(k_max) +
                    " enclosures leave the band";
    return detail::finish(std::move(r), width_at_min);
}

// Lower bounds stay positive: eps_lo(n) > 0 for all n <= k_max.
inline CheckResult verify_positivity(long k_max, const bounds::DeltaMap& deltas,
                                     PrecisionConfig p = {}) {
    CheckResult r;
    r.name = "positivity";
    if (k_max < 1) return r;
    auto prefixes = detail::epsilon_prefixes(k_max, deltas, p);
    bool first = true;
    long arg_min = 1;
    BigFloat width_at_min{BigFloat(0, 64)};
    for (const auto& pre : prefixes) {
        if (first || pre.lo < r.margin) {
            first = false;
            r.margin = pre.lo;
            arg_min = pre.n;
            width_at_min = pre.hi - pre.lo;
        }
    }
    r.status = r.margin > BigFloat(0, 64) ? Status::pass : Status::fail;
    r.lhs = detail::fmt(r.margin);
    r.rhs = "0";
    r.detail = "minimal eps_lo at n = " + std::to_string(arg_min);
    if (r.status == Status::fail)
        r.detail += "; requires " + r.lhs + " > 0";
    return detail::finish(std::move(r), width_at_min);
}

// (a) Sweep enclosures strictly separated decreasing in k.
// (b) epsilon(e^y) point values strictly decreasing over the sampled exponents.
inline CheckResult verify_monotonicity(const bounds::DeltaMap& deltas,
                                       const std::vector<BigFloat>& sample_exponents,
                                       PrecisionConfig p = {}) {
    p.validate();
    CheckResult r;
    r.name = "monotonicity";
    if (deltas.size() < 2 && sample_exponents.size() < 2) return r;
    bool first = true;
    BigFloat width_at_min{BigFloat(0, 64)};
    auto consider = [&](const BigFloat& slack, const BigFloat& width, const BigFloat& lhs,
                        const BigFloat& rhs, const std::string& where) {
        if (first || slack < r.margin) {
            first = false;
            r.margin = slack;
            width_at_min = width;
            r.lhs = detail::fmt(lhs);
            r.rhs = detail::fmt(rhs);
            r.detail = "binding " + where + ": requires " + r.lhs + " > " + r.rhs;
        }
    };
    for (auto it = deltas.begin(); it != deltas.end(); ++it) {
        auto next = std::next(it);
        if (next == deltas.end()) break;
        if (next->first != it->first + 1) continue;
        const auto& a = it->second;
        const auto& b = next->second;
        consider(a.S_lower - b.S_upper, a.width() + b.width(), a.S_lower, b.S_upper,
                 "separation at k = " + std::to_string(it->first) + " vs " +
                     std::to_string(next->first));
    }
    BigFloat prev;
    bool have_prev = false;
    BigFloat prev_y;
    for (const BigFloat& y : sample_exponents) {
        BigFloat val = logint::epsilon(logint::Point::from_exponent(y, p), p);
        if (have_prev)
            consider(prev - val, BigFloat(0, 64), prev, val,
                     "epsilon decrease from exponent " + detail::fmt(prev_y, 6) + " to " +
                         detail::fmt(y, 6));
        prev = val;
        prev_y = y;
        have_prev = true;
    }
    r.status = r.margin > BigFloat(0, 64) ? Status::pass : Status::fail;
    return detail::finish(std::move(r), width_at_min);
}

namespace detail {

struct CellDiff {
    bool first = true;
    BigFloat margin{BigFloat(0, 64)};
    std::string lhs, rhs, where;
    std::ostringstream diff;

    void row(const std::string& text) { diff << text << "\n"; }

    void compare(const std::string& cell, const BigFloat& computed, const char* expected,
                 const BigFloat& tol, bool relative = false) {
        BigFloat want = BigFloat::from_string(expected, 256);
        BigFloat err = abs(computed - want);
        BigFloat allowed = relative ? tol * abs(want) : tol;
        BigFloat slack = allowed - err;
        diff << "  " << cell << ": computed " << fmt(computed) << " expected " << expected
             << " diff " << fmt(err, 6) << "\n";
        if (first || slack < margin) {
            first = false;
            margin = slack;
            lhs = fmt(computed);
            rhs = expected;
            where = cell;
        }
    }

    void positive(const std::string& cell, const BigFloat& value) {
        if (first || value < margin) {
            first = false;
            margin = value;
            lhs = fmt(value);
            rhs = "0";
            where = cell + " positivity";
        }
    }

    CheckResult result(const std::string& name) {
        CheckResult r;
        r.name = name;
        r.status = (!first && margin > BigFloat(0, 64)) ? Status::pass : Status::fail;
        r.margin = margin;
        r.lhs = lhs;
        r.rhs = rhs;
        r.detail = "binding cell " + where + "\n" + diff.str();
        return r;
    }
};

}  // namespace detail

// Recompute a golden table from the cached sweep records and diff cell by
// cell. Tolerances: table 1 abs 1e-12, table 2 abs 1e-17 on the sums and
// rel 1e-9 on the widths, table 3 abs 1e-10, table 4 abs 1e-12 plus strict
// positivity of both gap columns.
inline CheckResult reproduce_table(int table_id, const bounds::DeltaMap& deltas,
                                   PrecisionConfig p = {}) {
    p.validate();
    detail::CellDiff diff;
    switch (table_id) {
        case 1: {
            BigFloat tol = BigFloat::from_string("1e-12", 96);
            auto prefixes = detail::epsilon_prefixes(golden::kTable1[8].k, deltas, p);
            for (const auto& row : golden::kTable1) {
                const auto& pre = prefixes[row.k - 1];
                diff.compare("n=" + std::to_string(row.k) + " lower", pre.lo, row.lower, tol);
                diff.compare("n=" + std::to_string(row.k) + " upper", pre.hi, row.upper, tol);
            }
            break;
        }
        case 2: {
            BigFloat tol_s = BigFloat::from_string("1e-17", 96);
            BigFloat tol_d = BigFloat::from_string("1e-9", 96);
            for (const auto& row : golden::kTable2) {
                auto it = deltas.find(row.k);
                if (it == deltas.end()) throw bounds::MissingDeltaError(row.k);
                diff.compare("k=" + std::to_string(row.k) + " S_lower", it->second.S_lower,
                             row.S_lower, tol_s);
                diff.compare("k=" + std::to_string(row.k) + " delta", it->second.width(),
                             row.delta, tol_d, true);
            }
            break;
        }
        case 3: {
            BigFloat tol = BigFloat::from_string("1e-10", 96);
            auto prefixes = detail::epsilon_prefixes(golden::kTable3[7].s, deltas, p);
            for (const auto& row : golden::kTable3) {
                bounds::EpsilonBound eb;
                eb.n = row.s;
                eb.lo = prefixes[row.s - 1].lo;
                eb.hi = prefixes[row.s - 1].hi;
                auto kt = bounds::kappa_tau(row.s, eb, p);
                std::string tag = "s=" + std::to_string(row.s) + " ";
                diff.compare(tag + "kappa_lo", kt.kappa_lo, row.kappa_lo, tol);
                diff.compare(tag + "tau_lo", kt.tau_lo, row.tau_lo, tol);
                diff.compare(tag + "kappa_hi", kt.kappa_hi, row.kappa_hi, tol);
                diff.compare(tag + "tau_hi", kt.tau_hi, row.tau_hi, tol);
            }
            break;
        }
        case 4: {
            BigFloat tol = BigFloat::from_string("1e-12", 96);
            for (const auto& row : golden::kTable4) {
                auto it = deltas.find(row.k);
                if (it == deltas.end()) throw bounds::MissingDeltaError(row.k);
                Enclosure simple = bounds::delta_k_simple(row.k, p);
                BigFloat lower_gap = it->second.S_lower - simple.lo;
                BigFloat upper_gap = simple.hi - it->second.S_upper;
                std::string tag = "k=" + std::to_string(row.k) + " ";
                diff.compare(tag + "lower_gap", lower_gap, row.lower_gap, tol);
                diff.compare(tag + "upper_gap", upper_gap, row.upper_gap, tol);
                diff.positive(tag + "lower_gap", lower_gap);
                diff.positive(tag + "upper_gap", upper_gap);
            }
            break;
        }
        default:
            throw std::domain_error("reproduce_table: table_id must be 1..4");
    }
    auto r = diff.result("table" + std::to_string(table_id));
    return detail::finish(std::move(r), BigFloat(0, 64));
}

// Grid sweep over the supporting inequalities:
//   (a) |1/sqrt(floor y) - 1/sqrt(y)| <= 1/(2 floor(y)^{3/2}) for y >= 1,
//   (b) truncated exponential series bounds on [0,1], (-1,0], and (-1,1),
//   (c) the two-sided bound on (n + 1/2) ln(n/(n+alpha)) for n <= 50,
//       0 <= alpha <= 1.
// Open interval endpoints are shrunk by 1e-6; closed endpoints are kept and
// evaluate exactly at their equality cases.
inline CheckResult verify_inequalities(int grid_density = 64, PrecisionConfig p = {}) {
    p.validate();
    if (grid_density < 2) throw std::invalid_argument("verify_inequalities: grid too small");
    const int wp = 256;
    CheckResult r;
    r.name = "inequalities";
    bool first = true;
    auto consider = [&](const BigFloat& slack, const BigFloat& lhs, const BigFloat& rhs,
                        const std::string& where) {
        if (first || slack < r.margin) {
            first = false;
            r.margin = slack;
            r.lhs = detail::fmt(lhs);
            r.rhs = detail::fmt(rhs);
            r.detail = "binding " + where;
        }
    };
    BigFloat shrink = BigFloat::from_string("1e-6", wp);

    // (a) floor-gap bound, fractional exponents across 1 <= floor(y) <= 12
    for (long n = 1; n <= 12; ++n) {
        BigFloat cap = 1L / (2 * pow(BigFloat(n, wp), BigFloat::from_string("1.5", wp)));
        for (int j = 0; j < grid_density; ++j) {
            BigFloat theta =
                shrink + (1 - 2 * shrink) * BigFloat(j, wp) / BigFloat(grid_density - 1, wp);
            BigFloat y = BigFloat(n, wp) + theta;
            auto pt = logint::Point::from_exponent(y, PrecisionConfig{wp});
            BigFloat gap = bounds::floor_root_gap(pt, PrecisionConfig{wp});
            consider(cap - gap, gap, cap, "floor gap at y = " + detail::fmt(y, 8));
        }
    }

    // (b) exponential series bounds
    auto partial = [&](const BigFloat& x, long terms) {
        NeumaierSum<BigFloat> s{BigFloat(0, wp)};
        BigFloat t(1, wp);
        for (long k = 0; k < terms; ++k) {
            if (k > 0) { t *= x; t /= k; }
            s.add(t);
        }
        return s.value();
    };
    auto power_int = [&](const BigFloat& x, long e) {
        BigFloat out(1, wp);
        for (long k = 0; k < e; ++k) out *= x;
        return out;
    };
    auto factorial_int = [&](long n) {
        BigFloat out(1, wp);
        for (long k = 2; k <= n; ++k) out *= k;
        return out;
    };
    for (long m = 0; m <= 6; ++m) {
        for (int j = 0; j < grid_density; ++j) {
            BigFloat t = BigFloat(j, wp) / BigFloat(grid_density - 1, wp);
            // sum_{k<=m} x^k/k! <= e^x on [0, 1]
            BigFloat x = t;
            consider(exp(x) - partial(x, m + 1), partial(x, m + 1), exp(x),
                     "series lower bound, x = " + detail::fmt(x, 8) + ", m = " +
                         std::to_string(m));
            // sum_{k<=2m-1} x^k/k! <= e^x on (-1, 0]
            x = -(1 - shrink) * t;
            consider(exp(x) - partial(x, 2 * m), partial(x, 2 * m), exp(x),
                     "series lower bound, x = " + detail::fmt(x, 8) + ", m = " +
                         std::to_string(m));
            // e^x <= sum_{k<=2m-1} x^k/k! + x^{2m}/((1-x)(2m)!). Bounding the
            // remainder term by term against (2m)! requires nonnegative
            // powers of x, so for m >= 1 this holds on [0, 1); the m = 0
            // case is the plain geometric series, valid on all of (-1, 1).
            // (At m = 1, x = -1/2 the wider form fails: e^{-1/2} = 0.6065
            // exceeds 1 - 1/2 + (1/4)/(3/2 * 2) = 0.5833.)
            x = m == 0 ? (1 - shrink) * (2 * t - 1) : (1 - shrink) * t;
            BigFloat tail = power_int(x, 2 * m) / ((1 - x) * factorial_int(2 * m));
            BigFloat rhs = partial(x, 2 * m) + tail;
            consider(rhs - exp(x), exp(x), rhs,
                     "series upper bound, x = " + detail::fmt(x, 8) + ", m = " +
                         std::to_string(m));
        }
    }

    // (c) two-sided log bound
    for (long n = 1; n <= 50; ++n) {
        for (int j = 0; j <= grid_density; ++j) {
            BigFloat alpha = BigFloat(j, wp) / BigFloat(grid_density, wp);
            BigFloat lhs = (BigFloat(n, wp) + BigFloat::from_string("0.5", wp)) *
                           log(BigFloat(n, wp) / (BigFloat(n, wp) + alpha));
            BigFloat upper = -alpha - alpha * (1 - alpha) / (4 * BigFloat(n, wp));
            BigFloat lower = upper - 1L / (16 * BigFloat(n, wp));
            std::string at = "log bound at n = " + std::to_string(n) + ", alpha = " +
                             detail::fmt(alpha, 8);
            consider(upper - lhs, lhs, upper, at + " (upper)");
            consider(lhs - lower, lower, lhs, at + " (lower)");
        }
    }

    r.status = (!first && r.margin >= BigFloat(0, 64)) ? Status::pass : Status::fail;
    return detail::finish(std::move(r), BigFloat(0, 64));
}

struct VerificationReport {
    std::vector<CheckResult> checks;
    ReportMetadata metadata;

    bool all_passed() const {
        return std::none_of(checks.begin(), checks.end(),
                            [](const CheckResult& c) { return c.status == Status::fail; });
    }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    std::string text() const {
        std::ostringstream out;
        out << metadata.tool_version << " verification report\n"
            << "precision_bits=" << metadata.precision_bits << " M=" << metadata.M
            << " generated=" << metadata.timestamp << "\n\n";
        int passed = 0, failed = 0, skipped = 0, warned = 0;
        for (const auto& c : checks) {
            const char* tag = c.status == Status::pass ? (c.warning ? "WARN" : "PASS")
                              : c.status == Status::fail ? "FAIL"
                                                         : "SKIP";
            out << "[" << tag << "] " << c.name;
            if (c.status != Status::skipped)
                out << "  margin=" << c.margin.to_string(17);
            out << "\n";
            if (!c.detail.empty() && c.status != Status::skipped) {
                std::istringstream lines(c.detail);
                std::string line;
                while (std::getline(lines, line))
                    if (!line.empty()) out << "    " << line << "\n";
            }
            if (c.status == Status::pass) ++passed;
            else if (c.status == Status::fail) ++failed;
            else ++skipped;
            if (c.warning) ++warned;
        }
        out << "\n" << checks.size() << " checks: " << passed << " passed";
        if (warned) out << " (" << warned << " with warnings)";
        out << ", " << failed << " failed, " << skipped << " skipped\n";
        return out.str();
    }

    std::string machine() const {
        std::ostringstream out;
        out << "name,status,margin,lhs,rhs\n";
        for (const auto& c : checks)
            out << c.name << "," << to_string(c.status) << "," << c.margin.to_string(17)
                << "," << c.lhs << "," << c.rhs << "\n";
        return out.str();
    }

    std::string json() const {
        auto esc = [](const std::string& s) {
            std::string out;
            for (char ch : s) {
                if (ch == '"' || ch == '\\') out += '\\', out += ch;
                else if (ch == '\n') out += "\\n";
                else out += ch;
            }
            return out;
        };
        std::ostringstream out;
        out << "{\n  \"metadata\": {\"tool\": \"" << esc(metadata.tool_version)
            << "\", \"precision_bits\": " << metadata.precision_bits
            << ", \"M\": " << metadata.M << ", \"timestamp\": \"" << metadata.timestamp
            << "\"},\n  \"checks\": [\n";
        for (std::size_t i = 0; i < checks.size(); ++i) {
            const auto& c = checks[i];
            out << "    {\"name\": \"" << c.name << "\", \"status\": \"" << to_string(c.status)
                << "\", \"margin\": \"" << c.margin.to_string(17) << "\", \"lhs\": \""
                << esc(c.lhs) << "\", \"rhs\": \"" << esc(c.rhs) << "\", \"warning\": "
                << (c.warning ? "true" : "false") << ", \"detail\": \"" << esc(c.detail)
                << "\"}" << (i + 1 < checks.size() ? "," : "") << "\n";
        }
        out << "  ]\n}\n";
        return out.str();
    }
};

struct RunConfig {
    int precision_bits = 192;
    long M = 1000000;
    long k_max = 1000;
    bool skip_tables = false;
    int threads = 1;
    int grid_density = 64;
    std::vector<std::string> selected;         // empty = all registered checks
    bounds::DeltaCache* cache = nullptr;       // optional persistent store
    std::function<void(const std::string&)> progress;
};

namespace detail {

inline std::string now_utc() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

inline bool selected(const RunConfig& cfg, const std::string& name) {
    if (cfg.selected.empty()) return true;
    return std::find(cfg.selected.begin(), cfg.selected.end(), name) != cfg.selected.end();
}

}  // namespace detail

// Runs every registered check (subset via cfg.selected; the rest are marked
// skipped) in registry order. Sweep-wide checks run on fast 64-bit records;
// the table rows k in {2,5,10,50,100,200,500,1000} are additionally built at
// the configured precision. Missing records are computed and, when a cache
// is attached, persisted.
inline VerificationReport run_all(const RunConfig& cfg) {
    PrecisionConfig p{cfg.precision_bits};
    p.validate();
    VerificationReport report;
    report.metadata.precision_bits = cfg.precision_bits;
    report.metadata.M = cfg.M;
    report.metadata.timestamp = detail::now_utc();
    report.metadata.tool_version = std::string(kToolName) + " " + kVersion;

    const int sweep_bits = cfg.precision_bits <= 64 ? cfg.precision_bits : 64;
    bounds::DeltaCache fallback;
    bounds::DeltaCache& cache = cfg.cache ? *cfg.cache : fallback;

    bool need_sweep = false;
    for (const char* t : {"conjecture", "positivity", "monotonicity", "table1", "table3"})
        if (detail::selected(cfg, t) && !(cfg.skip_tables && std::string(t).rfind("table", 0) == 0))
            need_sweep = true;
    if (need_sweep) {
        long missing = 0;
        for (long k = 2; k <= cfg.k_max; ++k)
            if (!cache.contains(k, cfg.M, sweep_bits)) ++missing;
        if (missing && cfg.progress)
            cfg.progress("building " + std::to_string(missing) + " sweep records at M = " +
                         std::to_string(cfg.M));
        for (long k = 2; k <= cfg.k_max; ++k)
            if (!cache.contains(k, cfg.M, sweep_bits))
                cache.insert(
                    bounds::delta_k_riemann(k, cfg.M, PrecisionConfig{sweep_bits}, cfg.threads));
    }

    bool need_rows = false;
    for (const char* t : {"table2", "table4"})
        if (detail::selected(cfg, t) && !cfg.skip_tables) need_rows = true;
    if (need_rows) {
        for (const auto& row : golden::kTable2)
            if (!cache.contains(row.k, cfg.M, cfg.precision_bits)) {
                if (cfg.progress)
                    cfg.progress("building table record k = " + std::to_string(row.k));
                cache.insert(
                    bounds::delta_k_riemann(row.k, cfg.M, p, cfg.threads));
            }
    }
    bounds::DeltaMap sweep = cache.select(cfg.M, sweep_bits);
    bounds::DeltaMap rows = cache.select(cfg.M, cfg.precision_bits);

    for (const auto& name : registry()) {
        CheckResult r;
        r.name = name;
        bool run = detail::selected(cfg, name) &&
                   !(name.rfind("table", 0) == 0 && cfg.skip_tables);
        if (run) {
            if (cfg.progress) cfg.progress("check " + name);
            if (name == "anchor") {
                r = verify_anchor(p);
            } else if (name == "conjecture") {
                r = verify_conjecture_band(cfg.k_max, sweep, PrecisionConfig{sweep_bits});
            } else if (name == "positivity") {
                r = verify_positivity(cfg.k_max, sweep, PrecisionConfig{sweep_bits});
            } else if (name == "monotonicity") {
                std::vector<BigFloat> ys;
                for (int i = 0; i < 100; ++i)
                    ys.push_back(BigFloat(1, 192) + BigFloat(49 * i, 192) / BigFloat(99, 192));
                r = verify_monotonicity(sweep, ys, p);
            } else if (name == "table1") {
                r = reproduce_table(1, sweep, PrecisionConfig{sweep_bits});
            } else if (name == "table2") {
                r = reproduce_table(2, rows, p);
            } else if (name == "table3") {
                r = reproduce_table(3, sweep, PrecisionConfig{sweep_bits});
            } else if (name == "table4") {
                r = reproduce_table(4, rows, p);
            } else if (name == "inequalities") {
                r = verify_inequalities(cfg.grid_density, p);
            }
        }
        report.checks.push_back(std::move(r));
    }
    return report;
}

}  // namespace sterr::verify
