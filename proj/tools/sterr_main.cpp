// sterr: certified enclosures for the Stieltjes li approximation.
//
// Subcommands: eval, sweep, table, verify, cache. Exit codes: 0 success,
// 1 failed verification check, 2 usage error, 3 dependency or I/O error.

#include <CLI11.hpp>

#include <sterr/cache.hpp>
#include <sterr/delta_bounds.hpp>
#include <sterr/epsilon_bounds.hpp>
#include <sterr/golden.hpp>
#include <sterr/logint.hpp>
#include <sterr/verify.hpp>
#include <sterr/version.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using sterr::BigFloat;
using sterr::PrecisionConfig;

int default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// Significant decimal digits carried by a p-bit mantissa.
int sig_digits(int bits) { return static_cast<int>(std::ceil(bits * std::log10(2.0))); }

// --cache flag beats STERR_CACHE beats ./sterr-cache.txt.
std::string resolve_cache_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("STERR_CACHE"); env && *env) return env;
    return "sterr-cache.txt";
}

struct EvalArgs {
    std::string fn;
    std::string x;
    std::string x_exp;
    long n = 0;
    long k = 0;
    long M = 100000;
    int prec = 192;
    int threads = default_threads();
    bool has_n = false;
    bool has_k = false;
};

sterr::logint::Point eval_point(const EvalArgs& a, PrecisionConfig p) {
    if (!a.x.empty() && !a.x_exp.empty())
        throw std::invalid_argument("eval: give either --x or --x-exp, not both");
    if (!a.x.empty())
        return sterr::logint::Point::from_value(BigFloat::from_string(a.x, p.bits + 64), p);
    if (!a.x_exp.empty())
        return sterr::logint::Point::from_exponent(BigFloat::from_string(a.x_exp, p.bits + 64),
                                                   p);
    throw std::invalid_argument("eval: " + a.fn + " requires --x or --x-exp");
}

int cmd_eval(const EvalArgs& a) {
    PrecisionConfig p{a.prec};
    const int digits = sig_digits(p.bits);
    if (a.fn == "delta") {
        if (!a.has_k) throw std::invalid_argument("eval delta requires --k (k >= 2)");
        auto rec = sterr::bounds::delta_k_riemann(a.k, a.M, p, a.threads);
        std::cout << rec.S_lower.to_general(digits) << ' ' << rec.S_upper.to_general(digits)
                  << '\n';
        return 0;
    }
    auto pt = eval_point(a, p);
    BigFloat v;
    if (a.fn == "li") {
        v = sterr::logint::li(pt, p);
    } else if (a.fn == "li_n") {
        if (!a.has_n) throw std::invalid_argument("eval li_n requires --n (n >= 1)");
        v = sterr::logint::li_n(pt, a.n, p);
    } else if (a.fn == "li_star") {
        v = sterr::logint::li_star(pt, p);
    } else {
        v = sterr::logint::epsilon(pt, p);
    }
    std::cout << v.to_general(digits) << '\n';
    return 0;
}

struct SweepArgs {
    long k_max = 1000;
    long M = 100000;
    int prec = 192;
    int threads = default_threads();
    std::vector<long> only;
    std::string cache_flag;
};

int cmd_sweep(const SweepArgs& a) {
    PrecisionConfig p{a.prec};
    std::vector<long> ks;
    if (a.only.empty()) {
        for (long k = 2; k <= a.k_max; ++k) ks.push_back(k);
    } else {
        ks = a.only;
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        for (long k : ks)
            if (k < 2 || k > a.k_max)
                throw std::invalid_argument("sweep: --only entries must lie in [2, k_max]");
    }
    const std::string path = resolve_cache_path(a.cache_flag);
    auto cache = sterr::bounds::DeltaCache::load_or_empty(path);
    long fresh = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        long k = ks[i];
        if (cache.contains(k, a.M, p.bits)) continue;
        cache.insert(sterr::bounds::delta_k_riemann(k, a.M, p, a.threads));
        ++fresh;
        if (fresh % 200 == 0)
            std::cerr << "sweep: " << fresh << " records built (k = " << k << ")\n";
    }
    cache.save(path);
    BigFloat accumulated(0, p.bits + 64);
    for (long k : ks) accumulated = accumulated + cache.find(k, a.M, p.bits)->width();
    std::cout << "sweep: " << fresh << " new records, " << ks.size() << " selected ("
              << cache.size() << " total in " << path << "), M = " << a.M
              << ", prec = " << p.bits << '\n';
    std::cout << "accumulated delta = " << accumulated.to_string(18) << '\n';
    return 0;
}

struct TableData {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

// The format flag changes serialization only; all three emitters consume the
// same cell strings.
void emit_csv(const TableData& t, std::ostream& out) {
    for (std::size_t i = 0; i < t.headers.size(); ++i)
        out << t.headers[i] << (i + 1 < t.headers.size() ? "," : "\n");
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
}

void emit_md(const TableData& t, std::ostream& out) {
    out << '|';
    for (const auto& h : t.headers) out << ' ' << h << " |";
    out << "\n|";
    for (std::size_t i = 0; i < t.headers.size(); ++i) out << " --- |";
    out << '\n';
    for (const auto& row : t.rows) {
        out << '|';
        for (const auto& cell : row) out << ' ' << cell << " |";
        out << '\n';
    }
}

void emit_json(const TableData& t, std::ostream& out) {
    out << "[\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out << "  {";
        for (std::size_t i = 0; i < t.headers.size(); ++i) {
            out << '"' << t.headers[i] << "\": \"" << t.rows[r][i] << '"';
            if (i + 1 < t.headers.size()) out << ", ";
        }
        out << (r + 1 < t.rows.size() ? "},\n" : "}\n");
    }
    out << "]\n";
}

struct TableArgs {
    int id = 0;
    std::string format = "md";
    long M = 1000000;
    int prec = 192;
    std::string cache_flag;
};

// Rebuild one published table from cached sweep records. Missing records are
// a dependency error; the message says which sweep refills them.
TableData build_table(const TableArgs& a, const sterr::bounds::DeltaCache& cache) {
    PrecisionConfig p{a.prec};
    auto deltas = cache.select(a.M, p.bits);
    auto remediation = [&](const std::string& missing, bool full_sweep) {
        std::ostringstream hint;
        hint << "table " << a.id << " needs sweep records at M = " << a.M
             << ", prec = " << p.bits << " (missing " << missing << "); run: sterr sweep"
             << " --k-max 1000 --M " << a.M << " --prec " << p.bits;
        if (!full_sweep) hint << " --only 2,5,10,50,100,200,500,1000";
        return sterr::bounds::CacheError(hint.str());
    };

    TableData t;
    switch (a.id) {
        case 1: {
            t.headers = {"k", "eps_lower", "eps_upper"};
            for (const auto& row : sterr::golden::kTable1) {
                try {
                    auto eb = sterr::bounds::epsilon_n_riemann(row.k, deltas, p);
                    t.rows.push_back({std::to_string(row.k), eb.lo.to_fixed(16),
                                      eb.hi.to_fixed(16)});
                } catch (const sterr::bounds::MissingDeltaError& e) {
                    throw remediation("k = " + std::to_string(e.missing_k()), true);
                }
            }
            break;
        }
        case 2: {
            t.headers = {"k", "S_lower", "delta"};
            for (const auto& row : sterr::golden::kTable2) {
                auto it = deltas.find(row.k);
                if (it == deltas.end()) throw remediation("k = " + std::to_string(row.k), false);
                t.rows.push_back({std::to_string(row.k), it->second.S_lower.to_fixed(23),
                                  it->second.width().to_string(17)});
            }
            break;
        }
        case 3: {
            t.headers = {"s", "kappa_lo", "tau_lo", "kappa_hi", "tau_hi"};
            for (const auto& row : sterr::golden::kTable3) {
                try {
                    auto eb = sterr::bounds::epsilon_n_riemann(row.s, deltas, p);
                    auto kt = sterr::bounds::kappa_tau(row.s, eb, p);
                    t.rows.push_back({std::to_string(row.s), kt.kappa_lo.to_fixed(10),
                                      kt.tau_lo.to_fixed(10), kt.kappa_hi.to_fixed(10),
                                      kt.tau_hi.to_fixed(10)});
                } catch (const sterr::bounds::MissingDeltaError& e) {
                    throw remediation("k = " + std::to_string(e.missing_k()), true);
                }
            }
            break;
        }
        case 4: {
            t.headers = {"k", "lower_gap", "upper_gap"};
            for (const auto& row : sterr::golden::kTable4) {
                auto it = deltas.find(row.k);
                if (it == deltas.end()) throw remediation("k = " + std::to_string(row.k), false);
                auto simple = sterr::bounds::delta_k_simple(row.k, p);
                BigFloat lower_gap = it->second.S_lower - simple.lo;
                BigFloat upper_gap = simple.hi - it->second.S_upper;
                t.rows.push_back({std::to_string(row.k), lower_gap.to_fixed(23),
                                  upper_gap.to_fixed(23)});
            }
            break;
        }
        default:
            throw std::domain_error("table: table_id must be 1..4");
    }
    return t;
}

int cmd_table(const TableArgs& a) {
    const std::string path = resolve_cache_path(a.cache_flag);
    auto cache = sterr::bounds::DeltaCache::load_or_empty(path);
    TableData t = build_table(a, cache);
    if (a.format == "csv")
        emit_csv(t, std::cout);
    else if (a.format == "json")
        emit_json(t, std::cout);
    else
        emit_md(t, std::cout);
    return 0;
}

struct VerifyArgs {
    bool all = false;
    std::vector<std::string> checks;
    long k_max = 1000;
    long M = 1000000;
    int prec = 192;
    int threads = default_threads();
    bool skip_tables = false;
    bool quiet = false;
    std::string format = "text";
    std::string cache_flag;
};

int cmd_verify(const VerifyArgs& a) {
    sterr::verify::RunConfig cfg;
    cfg.precision_bits = a.prec;
    cfg.M = a.M;
    cfg.k_max = a.k_max;
    cfg.skip_tables = a.skip_tables;
    cfg.threads = a.threads;
    cfg.selected = a.all ? std::vector<std::string>{} : a.checks;
    if (!a.quiet)
        cfg.progress = [](const std::string& msg) { std::cerr << "verify: " << msg << '\n'; };

    const std::string path = resolve_cache_path(a.cache_flag);
    auto cache = sterr::bounds::DeltaCache::load_or_empty(path);
    cfg.cache = &cache;
    auto report = sterr::verify::run_all(cfg);
    cache.save(path);

    if (a.format == "csv")
        std::cout << report.machine();
    else if (a.format == "json")
        std::cout << report.json();
    else
        std::cout << report.text();
    return report.all_passed() ? 0 : 1;
}

struct CacheArgs {
    std::string cache_flag;
    long M = 0;
    int prec = 0;
    bool has_M = false;
    bool has_prec = false;
};

int cmd_cache_inspect(const CacheArgs& a) {
    const std::string path = resolve_cache_path(a.cache_flag);
    auto cache = sterr::bounds::DeltaCache::load(path);
    std::cout << "cache " << path << ": " << cache.size() << " records\n";
    std::map<std::pair<long, int>, std::pair<long, std::pair<long, long>>> groups;
    for (const auto& [key, rec] : cache.all()) {
        auto& g = groups[{key.M, key.precision_bits}];
        if (g.first == 0) {
            g.second = {key.k, key.k};
        } else {
            g.second.first = std::min(g.second.first, key.k);
            g.second.second = std::max(g.second.second, key.k);
        }
        ++g.first;
    }
    for (const auto& [mk, g] : groups)
        std::cout << "  M = " << mk.first << ", prec = " << mk.second << ": " << g.first
                  << " records, k in [" << g.second.first << ", " << g.second.second << "]\n";
    return 0;
}

int cmd_cache_prune(const CacheArgs& a) {
    if (!a.has_M && !a.has_prec)
        throw std::invalid_argument("cache prune requires --M and/or --prec to say what to keep");
    const std::string path = resolve_cache_path(a.cache_flag);
    auto cache = sterr::bounds::DeltaCache::load(path);
    auto removed = cache.prune([&](const sterr::bounds::DeltaRecord& rec) {
        if (a.has_M && rec.M != a.M) return false;
        if (a.has_prec && rec.precision_bits != a.prec) return false;
        return true;
    });
    cache.save(path);
    std::cout << "pruned " << removed << " records, kept " << cache.size() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified enclosures for the Stieltjes approximation to li(x)"};
    app.set_version_flag("--version", std::string(sterr::kToolName) + " " + sterr::kVersion);
    app.require_subcommand(1);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "evaluate a function or enclosure");
    eval->add_option("fn", ev.fn, "one of li, li_n, li_star, epsilon, delta")
        ->required()
        ->check(CLI::IsMember({"li", "li_n", "li_star", "epsilon", "delta"}));
    eval->add_option("--x", ev.x, "argument x as a decimal");
    eval->add_option("--x-exp", ev.x_exp, "exponent y with x = e^y held exact");
    eval->add_option("--n", ev.n, "series order for li_n")->check(CLI::Range(1L, 1000000L));
    eval->add_option("--k", ev.k, "delta index")->check(CLI::Range(2L, 1000000L));
    eval->add_option("--M", ev.M, "grid size for delta")->check(CLI::Range(2L, 100000000L));
    eval->add_option("--prec", ev.prec, "working precision in bits")
        ->check(CLI::Range(53, 8192));
    eval->add_option("--threads", ev.threads, "worker threads")->check(CLI::Range(1, 256));

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "build delta records into the cache");
    sweep->add_option("--k-max", sw.k_max, "sweep k = 2..k_max")
        ->check(CLI::Range(2L, 1000000L));
    sweep->add_option("--M", sw.M, "grid size")->check(CLI::Range(2L, 100000000L));
    sweep->add_option("--prec", sw.prec, "record precision in bits")
        ->check(CLI::Range(53, 8192));
    sweep->add_option("--only", sw.only, "comma separated k list")->delimiter(',');
    sweep->add_option("--threads", sw.threads, "worker threads")->check(CLI::Range(1, 256));
    sweep->add_option("--cache", sw.cache_flag, "cache file path");

    TableArgs tb;
    auto* table = app.add_subcommand("table", "emit a recomputed table");
    table->add_option("id", tb.id, "table number 1..4")->required()->check(CLI::Range(1, 4));
    table->add_option("--format", tb.format, "csv, md or json")
        ->check(CLI::IsMember({"csv", "md", "json"}));
    table->add_option("--M", tb.M, "grid size of the cached records")
        ->check(CLI::Range(2L, 100000000L));
    table->add_option("--prec", tb.prec, "precision of the cached records")
        ->check(CLI::Range(53, 8192));
    table->add_option("--cache", tb.cache_flag, "cache file path");

    VerifyArgs vf;
    auto* verify = app.add_subcommand("verify", "run verification checks");
    verify->add_flag("--all", vf.all, "run every registered check (default)");
    std::set<std::string> names(sterr::verify::registry().begin(),
                                sterr::verify::registry().end());
    verify->add_option("--check", vf.checks, "check name, repeatable")
        ->check(CLI::IsMember(names));
    verify->add_option("--k-max", vf.k_max, "sweep upper index")
        ->check(CLI::Range(1L, 1000000L));
    verify->add_option("--M", vf.M, "grid size")->check(CLI::Range(2L, 100000000L));
    verify->add_option("--prec", vf.prec, "working precision in bits")
        ->check(CLI::Range(53, 8192));
    verify->add_option("--threads", vf.threads, "worker threads")->check(CLI::Range(1, 256));
    verify->add_flag("--skip-tables", vf.skip_tables, "skip the table checks");
    verify->add_flag("--quiet", vf.quiet, "suppress progress lines");
    verify->add_option("--format", vf.format, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    verify->add_option("--cache", vf.cache_flag, "cache file path");

    CacheArgs ca;
    auto* cache = app.add_subcommand("cache", "inspect or prune the record cache");
    cache->require_subcommand(1);
    auto* inspect = cache->add_subcommand("inspect", "summarize cache contents");
    inspect->add_option("--cache", ca.cache_flag, "cache file path");
    auto* prune = cache->add_subcommand("prune", "drop records not matching the filters");
    prune->add_option("--cache", ca.cache_flag, "cache file path");
    prune->add_option("--M", ca.M, "keep records with this grid size")
        ->check(CLI::Range(2L, 100000000L));
    prune->add_option("--prec", ca.prec, "keep records with this precision")
        ->check(CLI::Range(53, 8192));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        ev.has_n = eval->count("--n") > 0;
        ev.has_k = eval->count("--k") > 0;
        ca.has_M = prune->count("--M") > 0;
        ca.has_prec = prune->count("--prec") > 0;
        if (*eval) return cmd_eval(ev);
        if (*sweep) return cmd_sweep(sw);
        if (*table) return cmd_table(tb);
        if (*verify) return cmd_verify(vf);
        if (*inspect) return cmd_cache_inspect(ca);
        if (*prune) return cmd_cache_prune(ca);
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
