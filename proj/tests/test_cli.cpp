// End-to-end tests for the sterr binary. The harness runs the real
// executable (path in STERR_CLI_BIN, set by CMake) through /bin/sh and
// captures exit code, stdout and stderr.
#include <catch2/catch_amalgamated.hpp>

#include <sterr/cache.hpp>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string cli_bin() {
    const char* bin = std::getenv("STERR_CLI_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::mt19937_64 rng(std::random_device{}());
        path = fs::temp_directory_path() /
               ("sterr_cli_" + std::to_string(rng()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    static TempDir io;
    const std::string out_path = io.file("out.txt");
    const std::string err_path = io.file("err.txt");
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += "\"" + cli_bin() + "\" " + args + " > \"" + out_path + "\" 2> \"" + err_path + "\"";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, sep)) out.push_back(cell);
    return out;
}

// Markdown cells, trimmed: "| a | b |" -> {"a", "b"}.
std::vector<std::string> md_cells(const std::string& line) {
    std::vector<std::string> out;
    for (auto& cell : split(line, '|')) {
        std::size_t a = cell.find_first_not_of(' ');
        if (a == std::string::npos) continue;
        std::size_t b = cell.find_last_not_of(' ');
        out.push_back(cell.substr(a, b - a + 1));
    }
    return out;
}

// Shared small sweep used by the table and verify tests.
const std::string& shared_cache() {
    static TempDir dir;
    static std::string path = dir.file("sweep.txt");
    static bool built = [] {
        auto r = run_cli("sweep --k-max 1000 --M 1000 --prec 64 --cache \"" + path + "\"");
        REQUIRE(r.exit_code == 0);
        return true;
    }();
    (void)built;
    return path;
}

}  // namespace

TEST_CASE("eval prints values and enclosures at the requested digits") {
    auto eps = run_cli("eval epsilon --x-exp 1");
    CHECK(eps.exit_code == 0);
    CHECK(eps.out.rfind("0.823164012103108479", 0) == 0);

    auto star = run_cli("eval li_star --x-exp 1");
    CHECK(star.exit_code == 0);
    CHECK(star.out.rfind("2.71828182845904523536", 0) == 0);

    auto li64 = run_cli("eval li --x-exp 3 --prec 64");
    CHECK(li64.exit_code == 0);
    // 64 bits carry ceil(64 log10 2) = 20 significant digits.
    CHECK(lines_of(li64.out)[0].size() >= 20);

    auto delta = run_cli("eval delta --k 2 --M 1000 --prec 64");
    CHECK(delta.exit_code == 0);
    auto parts = split(lines_of(delta.out)[0], ' ');
    REQUIRE(parts.size() == 2);
    double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
    CHECK(lo < 0.2356063);
    CHECK(hi > 0.2356063);
    CHECK(hi - lo < 1e-3);
}

TEST_CASE("eval rejects bad arguments with usage exits") {
    CHECK(run_cli("eval delta --M 1000").exit_code == 2);        // no --k
    CHECK(run_cli("eval li_n --x-exp 2").exit_code == 2);        // no --n
    CHECK(run_cli("eval epsilon").exit_code == 2);               // no x at all
    CHECK(run_cli("eval epsilon --x 20 --x-exp 3").exit_code == 2);
    CHECK(run_cli("eval nosuch --x-exp 2").exit_code == 2);
    CHECK(run_cli("eval epsilon --x-exp 2 --prec 8").exit_code == 2);

    auto dom = run_cli("eval li --x 1");
    CHECK(dom.exit_code == 2);
    CHECK(!dom.err.empty());
}

TEST_CASE("help and version exit zero") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("verify --help").exit_code == 0);
    auto v = run_cli("--version");
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("sterr") != std::string::npos);
}

TEST_CASE("sweep is idempotent and the cache round-trips bit-identically") {
    TempDir dir;
    std::string cache = dir.file("c.txt");
    auto first = run_cli("sweep --k-max 12 --M 1000 --prec 64 --cache \"" + cache + "\"");
    REQUIRE(first.exit_code == 0);
    CHECK(first.out.find("11 new records") != std::string::npos);
    CHECK(first.out.find("accumulated delta") != std::string::npos);

    std::string contents = slurp(cache);
    auto rerun = run_cli("sweep --k-max 12 --M 1000 --prec 64 --cache \"" + cache + "\"");
    REQUIRE(rerun.exit_code == 0);
    CHECK(rerun.out.find("0 new records") != std::string::npos);
    CHECK(slurp(cache) == contents);

    // Every line the binary wrote reparses and reserializes to itself.
    auto loaded = sterr::bounds::DeltaCache::load(cache);
    REQUIRE(loaded.size() == 11);
    std::size_t i = 0;
    auto text = lines_of(contents);
    for (const auto& [key, rec] : loaded.all())
        CHECK(sterr::bounds::serialize_record(rec) == text[i++]);
}

TEST_CASE("sweep --only restricts the target set") {
    TempDir dir;
    std::string cache = dir.file("c.txt");
    auto r = run_cli("sweep --k-max 1000 --M 2000 --prec 64 --only 2,5,10 --cache \"" +
                     cache + "\"");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("3 new records") != std::string::npos);
    CHECK(sterr::bounds::DeltaCache::load(cache).size() == 3);

    auto bad = run_cli("sweep --k-max 10 --M 2000 --only 2,50 --cache \"" + cache + "\"");
    CHECK(bad.exit_code == 2);  // 50 outside [2, k_max]
}

TEST_CASE("table formats agree field by field") {
    const std::string args = " --M 1000 --prec 64 --cache \"" + shared_cache() + "\"";

    auto csv = run_cli("table 1 --format csv" + args);
    auto md = run_cli("table 1 --format md" + args);
    auto json_r = run_cli("table 1 --format json" + args);
    REQUIRE(csv.exit_code == 0);
    REQUIRE(md.exit_code == 0);
    REQUIRE(json_r.exit_code == 0);

    auto csv_lines = lines_of(csv.out);
    REQUIRE(csv_lines.size() == 10);
    CHECK(csv_lines[0] == "k,eps_lower,eps_upper");

    auto md_lines = lines_of(md.out);
    REQUIRE(md_lines.size() == 11);  // header, rule, 9 rows
    auto parsed = nlohmann::json::parse(json_r.out);
    REQUIRE(parsed.size() == 9);
    for (std::size_t r = 0; r < 9; ++r) {
        auto cells = split(csv_lines[r + 1], ',');
        auto mcells = md_cells(md_lines[r + 2]);
        REQUIRE(cells.size() == 3);
        REQUIRE(mcells.size() == 3);
        CHECK(cells == mcells);
        CHECK(parsed[r]["k"].get<std::string>() == cells[0]);
        CHECK(parsed[r]["eps_lower"].get<std::string>() == cells[1]);
        CHECK(parsed[r]["eps_upper"].get<std::string>() == cells[2]);
    }

    // Row 1 carries the anchor in both bound columns.
    auto row1 = md_cells(md_lines[2]);
    CHECK(row1[0] == "1");
    CHECK(row1[1] == row1[2]);
    CHECK(row1[1].rfind("0.823164012103108", 0) == 0);
}

TEST_CASE("table 3 emits the pinned csv header") {
    auto csv = run_cli("table 3 --format csv --M 1000 --prec 64 --cache \"" +
                       shared_cache() + "\"");
    REQUIRE(csv.exit_code == 0);
    auto ls = lines_of(csv.out);
    REQUIRE(ls.size() == 9);
    CHECK(ls[0] == "s,kappa_lo,tau_lo,kappa_hi,tau_hi");
    // kappa_lo at s = 100 is e^{1/1200} regardless of the sweep quality.
    auto s100 = split(ls[5], ',');
    CHECK(s100[0] == "100");
    CHECK(s100[1].rfind("1.00083368", 0) == 0);
}

TEST_CASE("table 2 and 4 read the dedicated records") {
    // The gap positivity of table 4 needs the fine grid; build the 8
    // dedicated rows at M = 1e6 (fast at 64 bits).
    TempDir dir;
    std::string cache = dir.file("rows.txt");
    REQUIRE(run_cli("sweep --k-max 1000 --M 1000000 --prec 64 "
                    "--only 2,5,10,50,100,200,500,1000 --cache \"" + cache + "\"")
                .exit_code == 0);
    const std::string args = " --M 1000000 --prec 64 --cache \"" + cache + "\"";

    auto parsed = nlohmann::json::parse(run_cli("table 2 --format json" + args).out);
    REQUIRE(parsed.size() == 8);
    CHECK(parsed[0]["k"] == "2");
    CHECK(parsed[0]["S_lower"].get<std::string>().rfind("0.2356059370379786", 0) == 0);

    auto t4 = run_cli("table 4 --format csv" + args);
    REQUIRE(t4.exit_code == 0);
    auto ls = lines_of(t4.out);
    REQUIRE(ls.size() == 9);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        auto cells = split(ls[i], ',');
        REQUIRE(cells.size() == 3);
        CHECK(std::stod(cells[1]) > 0.0);
        CHECK(std::stod(cells[2]) > 0.0);
    }
}

TEST_CASE("missing cache records give a dependency exit with a hint") {
    TempDir dir;
    auto r = run_cli("table 2 --M 5000 --cache \"" + dir.file("empty.txt") + "\"");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("sterr sweep") != std::string::npos);
    CHECK(r.err.find("--M 5000") != std::string::npos);

    auto inspect = run_cli("cache inspect --cache \"" + dir.file("nope.txt") + "\"");
    CHECK(inspect.exit_code == 3);
}

TEST_CASE("corrupted cache lines are reported with their line number") {
    TempDir dir;
    std::string cache = dir.file("bad.txt");
    {
        std::ofstream out(cache);
        out << "# comment\n";
        out << "2,1000,64,1.0e-1,2.0e-1,4.0e-1,3.5e-1\n";
        out << "totally,broken\n";
    }
    auto r = run_cli("cache inspect --cache \"" + cache + "\"");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("verify wires run_all with the documented exit codes") {
    // Keep the default-path cache writes out of the working directory.
    TempDir dir;
    const std::string env = "STERR_CACHE=\"" + dir.file("v.txt") + "\"";

    auto anchor = run_cli("verify --check anchor --quiet --skip-tables", env);
    CHECK(anchor.exit_code == 0);
    CHECK(anchor.out.find("[PASS] anchor") != std::string::npos);
    CHECK(anchor.out.find("[SKIP] conjecture") != std::string::npos);

    CHECK(run_cli("verify --check conjecture --k-max 0").exit_code == 2);
    CHECK(run_cli("verify --check nosuch").exit_code == 2);

    // A very coarse sweep cannot keep the band; the failure exits 1.
    auto coarse = run_cli("verify --check conjecture --k-max 20 --M 1000 --prec 64 --quiet "
                          "--cache \"" + shared_cache() + "\"");
    CHECK(coarse.exit_code == 1);
    CHECK(coarse.out.find("[FAIL] conjecture") != std::string::npos);

    auto csv = run_cli("verify --check anchor --quiet --skip-tables --format csv", env);
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("name,status,margin,lhs,rhs", 0) == 0);

    auto js = run_cli("verify --check anchor --quiet --skip-tables --format json", env);
    CHECK(js.exit_code == 0);
    auto parsed = nlohmann::json::parse(js.out);
    CHECK(parsed["checks"][0]["name"] == "anchor");
    CHECK(parsed["checks"][0]["status"] == "pass");
}

TEST_CASE("STERR_CACHE selects the cache when no flag is given") {
    TempDir dir;
    std::string env_cache = dir.file("env.txt");
    auto r = run_cli("sweep --k-max 5 --M 1000 --prec 64",
                     "STERR_CACHE=\"" + env_cache + "\"");
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(env_cache));

    auto inspect = run_cli("cache inspect", "STERR_CACHE=\"" + env_cache + "\"");
    CHECK(inspect.exit_code == 0);
    CHECK(inspect.out.find("4 records") != std::string::npos);

    // An explicit flag beats the environment.
    auto other = run_cli("cache inspect --cache \"" + dir.file("missing.txt") + "\"",
                         "STERR_CACHE=\"" + env_cache + "\"");
    CHECK(other.exit_code == 3);
}

TEST_CASE("cache prune keeps only the matching records") {
    TempDir dir;
    std::string cache = dir.file("c.txt");
    REQUIRE(run_cli("sweep --k-max 6 --M 1000 --prec 64 --cache \"" + cache + "\"")
                .exit_code == 0);
    REQUIRE(run_cli("sweep --k-max 4 --M 1000 --prec 53 --cache \"" + cache + "\"")
                .exit_code == 0);
    REQUIRE(sterr::bounds::DeltaCache::load(cache).size() == 8);

    CHECK(run_cli("cache prune --cache \"" + cache + "\"").exit_code == 2);
    auto pr = run_cli("cache prune --prec 64 --cache \"" + cache + "\"");
    CHECK(pr.exit_code == 0);
    CHECK(pr.out.find("pruned 3") != std::string::npos);
    auto left = sterr::bounds::DeltaCache::load(cache);
    CHECK(left.size() == 5);
    CHECK(left.select(1000, 53).empty());
}
