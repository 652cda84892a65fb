#include <doctest.h>

#include "avcensus/weil.hpp"

using namespace avc;
using weil::WeilPolynomial;

TEST_CASE("real Weil transform on degree 2") {
    // f = x^2 - a x + 2 -> h = y - a
    auto f = WeilPolynomial::make(1, 2, {Int(3)});
    auto h = weil::to_real_weil(f);
    CHECK(h.c == std::vector<Int>{Int(-3)});
    CHECK(weil::from_real_weil(h) == f);
}

TEST_CASE("real Weil transform on x^4 + 4") {
    // a = (0,0), q = 2 -> h = y^2 - 4, oracle: expand x^2((x+2/x)^2 - 4)
    auto f = WeilPolynomial::make(2, 2, {Int(0), Int(0)});
    auto h = weil::to_real_weil(f);
    CHECK(h.c == std::vector<Int>{Int(0), Int(-4)});
    CHECK(weil::from_real_weil(h) == f);
}

TEST_CASE("degenerate g = 0") {
    auto f = WeilPolynomial::make(0, 2, {});
    CHECK(weil::to_real_weil(f).c.empty());
    CHECK(weil::is_weil(f));
}

TEST_CASE("functional equation violations are rejected") {
    // x^4 + x^3 + 1 is monic of even degree but breaks the q-symmetry
    poly::Poly bad = {Int(1), Int(0), Int(0), Int(1), Int(1)};
    CHECK_THROWS_AS(WeilPolynomial::from_full_coefficients(2, bad), PreconditionError);
}

TEST_CASE("is_weil decides |root| = sqrt(q) exactly") {
    // roots 1 +- i
    CHECK(weil::is_weil(WeilPolynomial::make(1, 2, {Int(2)})));
    // a^2 = 9 > 4q = 8
    CHECK_FALSE(weil::is_weil(WeilPolynomial::make(1, 2, {Int(3)})));
    // (x - 2)^2: repeated real root at sqrt(4)
    CHECK(weil::is_weil(WeilPolynomial::make(1, 4, {Int(4)})));
    // x^2 + 2x + 2
    CHECK(weil::is_weil(WeilPolynomial::make(1, 2, {Int(-2)})));
}

TEST_CASE("power sums by Newton identities") {
    auto f = WeilPolynomial::make(1, 2, {Int(2)});
    CHECK(weil::power_sum_profile(f) == std::vector<Int>{Int(2)});
    auto f2 = WeilPolynomial::make(2, 2, {Int(0), Int(0)});
    CHECK(weil::power_sum_profile(f2) == std::vector<Int>{Int(0), Int(0)});
    auto f3 = WeilPolynomial::make(1, 4, {Int(4)});
    CHECK(weil::power_sum_profile(f3) == std::vector<Int>{Int(4)});
    // s2 = a1^2 - 2 a2
    auto f4 = WeilPolynomial::make(2, 2, {Int(1), Int(-1)});
    auto s = weil::power_sum_profile(f4);
    CHECK(s[0] == 1);
    CHECK(s[1] == 1 + 2);
}

TEST_CASE("enumeration counts, both routes") {
    // g = 1: N = 2 floor(2 sqrt q) + 1, the closed-form interval count
    struct Row {
        unsigned g;
        unsigned long q;
        long expect;
    };
    for (auto [g, q, expect] : {Row{1, 2, 5}, Row{1, 5, 9}, Row{1, 3, 7}, Row{1, 7, 11}}) {
        CHECK(weil::enumerate_weil(g, q).count == expect);
        CHECK(weil::enumerate_weil_coefficient_space(g, q).count == expect);
    }
    // frozen after dual-oracle agreement and an independent numeric recount
    CHECK(weil::enumerate_weil(2, 2).count == 35);
    CHECK(weil::enumerate_weil_coefficient_space(2, 2).count == 35);
    CHECK(weil::enumerate_weil(2, 3).count == 63);
    CHECK(weil::enumerate_weil(0, 5).count == 1);
}

TEST_CASE("enumerated polynomials satisfy the module invariants") {
    weil::EnumerateOptions opts;
    opts.keep_list = true;
    for (unsigned long q : {2ul, 3ul}) {
        auto res = weil::enumerate_weil(2, q, opts);
        for (const auto& f : res.list) {
            CHECK(weil::is_weil(f));
            // round trip through the real Weil polynomial
            CHECK(weil::from_real_weil(weil::to_real_weil(f)) == f);
            // power-sum box |s_k| <= 2g q^{k/2}
            auto s = weil::power_sum_profile(f);
            for (unsigned k = 1; k <= f.g; ++k)
                CHECK(s[k - 1] * s[k - 1] <= Int(4) * f.g * f.g * pow_int(q, k));
        }
    }
}

TEST_CASE("parallel enumeration is partition-independent") {
    weil::EnumerateOptions seq, par;
    par.threads = 3;
    CHECK(weil::enumerate_weil(2, 3, seq).count == weil::enumerate_weil(2, 3, par).count);
}

TEST_CASE("count bounds") {
    auto cb = weil::count_bounds(1, 2);
    // (2g)^g q^{g(g+1)/4} = 2 sqrt 2
    CHECK(cb.power_sum_bound_decimal.substr(0, 7) == "2.82842");
    CHECK(cb.interval_bound == 5);
    auto cb14 = weil::count_bounds(1, 4);
    CHECK(cb14.interval_bound == 9);
    auto cb22 = weil::count_bounds(2, 2);
    CHECK(cb22.power_sum_bound_decimal.substr(0, 7) == "45.2548");  // 16 * 2^1.5
    // interval bound dominates the exact count on the tested grid
    for (unsigned g = 1; g <= 2; ++g)
        for (unsigned long q : {2ul, 3ul}) {
            CHECK(weil::count_bounds(g, q).interval_bound >= weil::enumerate_weil(g, q).count);
        }
    // the documented discrepancy at (1,2): bound 2.83 < exact count 5
    CHECK(cb.power_sum_bound_log2 < 2.0);  // log2(5) > 2 > log2(2.83)
}

TEST_CASE("desk-scale limits produce typed errors") {
    CHECK_THROWS_AS(weil::enumerate_weil(5, 2), LimitExceededError);
    CHECK_THROWS_AS(weil::enumerate_weil(1, 11), LimitExceededError);
    CHECK_THROWS_AS(weil::enumerate_weil(1, 6), PreconditionError);  // not a prime power
}
