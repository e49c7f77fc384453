#include <catch2/catch_amalgamated.hpp>

#include "sterr/logint.hpp"
#include "support/oracles.hpp"

using sterr::BigFloat;
using sterr::PrecisionConfig;
namespace logint = sterr::logint;

namespace {

const PrecisionConfig p192{192};

BigFloat ref(const char* s) { return BigFloat::from_string(s, 192); }

}  // namespace

TEST_CASE("li matches 25-digit reference values") {
    struct Row {
        const char* x;
        const char* value;
    };
    const Row rows[] = {
        {"2", "1.045163780117492784844589"},
        {"10", "6.165599504787297937522982"},
        {"0.5", "-0.3786710430610879767272072"},
        {"0.1", "-0.03238978959329102169662632"},
    };
    for (const auto& row : rows) {
        BigFloat got = logint::li(BigFloat::from_string(row.x, 192), p192);
        CHECK(abs(got - ref(row.value)) < 1e-24);
    }

    BigFloat got_e = logint::li(BigFloat::e(256), p192);
    CHECK(abs(got_e - ref("1.895117816355936755466521")) < 1e-24);

    BigFloat got_e5 = logint::li(exp(BigFloat(5, 256)), p192);
    CHECK(abs(got_e5 - ref("40.18527535580317745509142")) < 1e-23);
}

TEST_CASE("li agrees with the naive series oracle") {
    for (double x : {1.5, 2.0, 4.0, 10.0, 148.4131591025766}) {
        BigFloat got = logint::li(BigFloat(x, 192), p192);
        BigFloat want = sterr::oracle::li_reference(BigFloat(x, 192), 192);
        CHECK(abs(got - want) < abs(want) * BigFloat::pow2(-180, 192));
    }
}

TEST_CASE("li agrees with direct quadrature") {
    // li(x) = gamma + ln(ln x) + integral_0^{ln x} (e^s - 1)/s ds for x > 1.
    for (double x : {2.0, 10.0, 100.0}) {
        const int wp = 256;
        BigFloat y = log(BigFloat(x, wp));
        BigFloat integral = sterr::oracle::romberg(
            [](const BigFloat& s) {
                if (s.is_zero()) return BigFloat(1, s.precision());
                return expm1(s) / s;
            },
            BigFloat(0, wp), y, wp, BigFloat::pow2(-200, wp));
        BigFloat want = BigFloat::euler(wp) + log(y) + integral;
        BigFloat got = logint::li(BigFloat(x, wp), PrecisionConfig{wp});
        CHECK(abs(got - want) < BigFloat::pow2(-190, wp));
    }
}

TEST_CASE("li domain handling") {
    CHECK(logint::li(BigFloat(0, 192), p192).is_zero());
    CHECK_THROWS_AS(logint::li(BigFloat(1, 192), p192), std::domain_error);
    CHECK_THROWS_AS(logint::li(BigFloat(-2, 192), p192), std::domain_error);
}

TEST_CASE("li precision scaling is consistent") {
    BigFloat coarse = logint::li(BigFloat(10, 53), PrecisionConfig{53});
    BigFloat fine = logint::li(BigFloat(10, 192), p192);
    CHECK(abs(coarse - fine) < abs(fine) * BigFloat::pow2(-48, 192));
}

TEST_CASE("li_n partial sums") {
    BigFloat e2 = exp(BigFloat(2, 256));
    CHECK(abs(logint::li_n(e2, 1, p192) - ref("3.694528049465325113615214")) < 1e-23);

    BigFloat got = logint::li_n(BigFloat::e(256), 2, p192);
    CHECK(abs(got - ref("5.436563656918090470720575")) < 1e-23);

    BigFloat e3 = exp(BigFloat(3, 256));
    CHECK(abs(logint::li_n(e3, 3, p192) - ref("10.41472284906027216196294")) < 1e-22);

    CHECK(logint::li_n(e2, 0, p192).is_zero());
    CHECK_THROWS_AS(logint::li_n(e2, -1, p192), std::domain_error);
    CHECK_THROWS_AS(logint::li_n(e2, 10001, p192), std::domain_error);
    CHECK_THROWS_AS(logint::li_n(BigFloat(0.5, 192), 3, p192), std::domain_error);
}

TEST_CASE("li_star reference values and continuity") {
    auto at_exp = [](double y) {
        return logint::Point::from_exponent(BigFloat(y, 256), p192);
    };
    CHECK(abs(logint::li_star(at_exp(1.5), p192) -
              ref("3.983723618078279842312938")) < 1e-23);
    CHECK(abs(logint::li_star(at_exp(2.0), p192) -
              ref("5.541792074197987670422821")) < 1e-23);

    // At x = e the alpha term vanishes and li*(e) = e exactly.
    BigFloat at_e = logint::li_star(at_exp(1.0), p192);
    CHECK(abs(at_e - BigFloat::e(192)) < BigFloat::pow2(-185, 192));

    // Continuity across the integer boundary ln x = 2.
    BigFloat below = logint::li_star(at_exp(2.0 - 1e-13), p192);
    BigFloat above = logint::li_star(at_exp(2.0 + 1e-13), p192);
    CHECK(abs(below - above) < 1e-11);

    CHECK_THROWS_AS(logint::li_star(BigFloat(2, 192), p192), std::domain_error);
}

TEST_CASE("value-defined and exponent-defined points agree") {
    BigFloat y(2.5, 256);
    auto pe = logint::Point::from_exponent(y, p192);
    auto pv = logint::Point::from_value(exp(BigFloat(2.5, 320)), p192);
    BigFloat a = logint::li_star(pe, p192);
    BigFloat b = logint::li_star(pv, p192);
    CHECK(abs(a - b) < abs(a) * BigFloat::pow2(-184, 192));
}

TEST_CASE("truncation_index classifies points") {
    auto ti = logint::truncation_index(
        logint::Point::from_exponent(BigFloat(2.5, 192), p192));
    CHECK(ti.n_star == 2);
    CHECK(abs(ti.alpha - 0.5) < BigFloat::pow2(-120, 192));
    CHECK(ti.n_x == 2);

    auto tk = logint::truncation_index(
        logint::Point::from_exponent(BigFloat(7, 192), p192));
    CHECK(tk.n_star == 7);
    CHECK(tk.alpha.is_zero());
    CHECK(tk.n_x == 6);

    auto t1 = logint::truncation_index(
        logint::Point::from_exponent(BigFloat(1, 192), p192));
    CHECK(t1.n_star == 1);
    CHECK(t1.n_x == 0);

    auto t12 = logint::truncation_index(
        logint::Point::from_exponent(BigFloat(1.2, 192), p192));
    CHECK(t12.n_star == 1);
    CHECK(t12.n_x == 1);

    CHECK_THROWS_AS(
        logint::truncation_index(logint::Point::from_value(BigFloat(2, 192), p192)),
        std::domain_error);
}

TEST_CASE("epsilon matches reference values") {
    struct Row {
        long k;
        const char* value;
    };
    const Row rows[] = {
        {1, "0.8231640121031084798937665"},
        {2, "0.5875577181960975070433155"},
        {5, "0.3730727637489567278310439"},
        {10, "0.2640428443818336577310708"},
    };
    for (const auto& row : rows) {
        BigFloat got = logint::epsilon_k(row.k, p192);
        CHECK(abs(got - ref(row.value)) < 1e-24);
    }
}

TEST_CASE("epsilon survives heavy cancellation") {
    // At x = e^1000 the two terms agree to ~1443 bits; the internal precision
    // boost must absorb all of it.
    BigFloat got = logint::epsilon_k(1000, p192);
    CHECK(abs(got - ref("0.02642203486653568219532876")) < 1e-24);

    BigFloat got100 = logint::epsilon_k(100, p192);
    CHECK(abs(got100 - ref("0.08354953046782862149783242")) < 1e-24);

    // The boost is keyed off the requested precision, so a 53-bit request
    // still comes back fully accurate at 53 bits.
    BigFloat coarse = logint::epsilon_k(1000, PrecisionConfig{53});
    CHECK(abs(coarse - got) < abs(got) * BigFloat::pow2(-48, 192));
}

TEST_CASE("epsilon is positive and decreasing on a sample") {
    BigFloat prev;
    bool have_prev = false;
    for (long k : {1, 2, 3, 5, 8, 13, 21, 50}) {
        BigFloat cur = logint::epsilon_k(k, p192);
        CHECK(cur.sign() > 0);
        if (have_prev) CHECK(cur < prev);
        prev = cur;
        have_prev = true;
    }
    CHECK_THROWS_AS(logint::epsilon_k(0, p192), std::domain_error);
}
