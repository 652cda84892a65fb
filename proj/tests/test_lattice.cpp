#include <doctest.h>

#include <random>

#include "avcensus/lattice.hpp"

using namespace avc;
using namespace avc::lattice;

TEST_CASE("partition generation and the pentagonal recurrence agree") {
    for (unsigned j = 0; j <= 12; ++j) {
        long direct = 0;
        for_each_partition(j, [&](const std::vector<unsigned>&) { ++direct; });
        CHECK(partition_count(j) == direct);
    }
    CHECK(partition_count(5) == 7);
    CHECK(partition_count(10) == 42);
    CHECK(partition_count(64) == 1741630);
}

TEST_CASE("p(j) <= 2^j") {
    for (unsigned j : {1u, 5u, 10u, 32u, 64u}) CHECK(partition_bound_check(j));
    CHECK_THROWS_AS(partition_bound_check(65), LimitExceededError);
}

TEST_CASE("ideal counts: partition formula vs exhaustive enumeration") {
    CHECK(hilb_count(2, 0) == 1);
    CHECK(hilb_count(2, 2) == 3);
    CHECK(hilb_count(2, 3) == 7);
    CHECK(hilb_brute_force(2, 1) == 1);
    CHECK(hilb_brute_force(3, 2) == 4);
    for (unsigned long ell : {2ul, 3ul})
        for (unsigned j = 0; j <= 4; ++j) {
            CHECK(hilb_count(ell, j) == hilb_brute_force(ell, j));
            CHECK(hilb_count(ell, j) <= pow_int(ell, j) * pow_int(2ul, j));
        }
    CHECK_THROWS_AS(hilb_count(2, 13), LimitExceededError);
    CHECK_THROWS_AS(hilb_brute_force(2, 5), LimitExceededError);
}

TEST_CASE("stable sublattice counts") {
    TruncatedMatrix id2{2, 3, 2, {{1, 0}, {0, 1}}};
    auto counts = count_stable_sublattices(id2, 1);
    CHECK(counts[0] == 1);
    CHECK(counts[1] == 3);  // #P^1(F_2)
    TruncatedMatrix diag01{2, 2, 2, {{0, 0}, {0, 1}}};
    auto c2 = count_stable_sublattices(diag01, 1);
    CHECK(c2[1] == 2);  // only the two eigen-sublattices
    CHECK_THROWS_AS(count_stable_sublattices(diag01, 2), PrecisionInsufficientError);
}

namespace {

// conjugate gamma by a random unimodular matrix over Z/ell^k (test oracle)
TruncatedMatrix conjugate_random(const TruncatedMatrix& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::int64_t mod = g.modulus();
    unsigned n = g.n;
    for (;;) {
        std::vector<std::vector<Int>> u(n, std::vector<Int>(n));
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) u[i][j] = long(rng() % (unsigned long)mod);
        // invertible mod ell iff det is a unit
        std::vector<std::vector<Int>> m = u;
        Int det = 1;
        bool ok = true;
        for (unsigned c = 0; c < n && ok; ++c) {
            unsigned piv = c;
            while (piv < n && m[piv][c] % g.ell == 0) ++piv;
            if (piv == n) {
                ok = false;
                break;
            }
            std::swap(m[piv], m[c]);
            det = c == piv ? det : Int(-det);
            det *= m[c][c];
            Int inv;  // inverse of m[c][c] mod mod
            Int mm(mod);
            if (mpz_invert(inv.get_mpz_t(), m[c][c].get_mpz_t(), mm.get_mpz_t()) == 0) {
                ok = false;
                break;
            }
            for (unsigned i = c + 1; i < n; ++i) {
                Int f = m[i][c] * inv % mod;
                for (unsigned j = 0; j < n; ++j)
                    m[i][j] = ((m[i][j] - f * m[c][j]) % mod + mod) % mod;
            }
        }
        if (!ok) continue;
        // compute u^{-1} mod mod by Gauss-Jordan
        std::vector<std::vector<Int>> a = u, inv(n, std::vector<Int>(n, Int(0)));
        for (unsigned i = 0; i < n; ++i) inv[i][i] = 1;
        bool sing = false;
        for (unsigned c = 0; c < n && !sing; ++c) {
            unsigned piv = c;
            while (piv < n && a[piv][c] % g.ell == 0) ++piv;
            if (piv == n) {
                sing = true;
                break;
            }
            std::swap(a[piv], a[c]);
            std::swap(inv[piv], inv[c]);
            Int pi;
            Int mm(mod);
            mpz_invert(pi.get_mpz_t(), a[c][c].get_mpz_t(), mm.get_mpz_t());
            for (unsigned j = 0; j < n; ++j) {
                a[c][j] = a[c][j] * pi % mod;
                inv[c][j] = inv[c][j] * pi % mod;
            }
            for (unsigned i = 0; i < n; ++i) {
                if (i == c || a[i][c] == 0) continue;
                Int f = a[i][c];
                for (unsigned j = 0; j < n; ++j) {
                    a[i][j] = ((a[i][j] - f * a[c][j]) % mod + mod) % mod;
                    inv[i][j] = ((inv[i][j] - f * inv[c][j]) % mod + mod) % mod;
                }
            }
        }
        if (sing) continue;
        // gamma' = u gamma u^{-1}
        auto mulm = [&](const std::vector<std::vector<Int>>& x,
                        const std::vector<std::vector<Int>>& y) {
            std::vector<std::vector<Int>> z(n, std::vector<Int>(n, Int(0)));
            for (unsigned i = 0; i < n; ++i)
                for (unsigned l = 0; l < n; ++l)
                    for (unsigned j = 0; j < n; ++j)
                        z[i][j] = (z[i][j] + x[i][l] * y[l][j]) % mod;
            return z;
        };
        std::vector<std::vector<Int>> gm(n, std::vector<Int>(n));
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) gm[i][j] = (long)g.entries[i][j];
        auto res = mulm(mulm(u, gm), inv);
        TruncatedMatrix out = g;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) out.entries[i][j] = res[i][j].get_si();
        return out;
    }
}

}  // namespace

TEST_CASE("stable counts are conjugation invariant") {
    TruncatedMatrix gamma{2, 4, 2, {{2, 1}, {0, 3}}};
    auto base = count_stable_sublattices(gamma, 2);
    for (unsigned seed : {11u, 22u, 33u}) {
        auto conj = conjugate_random(gamma, seed);
        CHECK(count_stable_sublattices(conj, 2) == base);
    }
    TruncatedMatrix gamma3{3, 3, 3, {{0, 1, 0}, {0, 0, 1}, {3, 0, 6}}};
    auto base3 = count_stable_sublattices(gamma3, 2);
    auto conj3 = conjugate_random(gamma3, 7);
    CHECK(count_stable_sublattices(conj3, 2) == base3);
}

TEST_CASE("isotypic gluing equals ell^delta with unordered pair sum") {
    poly::Poly x = {Int(0), Int(1)};
    auto g0 = isotypic_glue_count(x, {Int(-1), Int(1)}, 2, 4);
    CHECK(g0.brute_count == 1);
    CHECK(g0.delta_unordered == 0);
    auto g1 = isotypic_glue_count(x, {Int(-2), Int(1)}, 2, 4);
    CHECK(g1.brute_count == 2);
    CHECK(g1.formula_count == 2);
    CHECK(g1.delta_ordered == 2);  // the doubled sum used by the bound chain
    auto g2 = isotypic_glue_count(x, {Int(-4), Int(1)}, 2, 5);
    CHECK(g2.brute_count == 4);
    // quadratic blocks: Res(x^2+1, x^2+3) = 4
    auto g3 = isotypic_glue_count({Int(1), Int(0), Int(1)}, {Int(3), Int(0), Int(1)}, 2, 4);
    CHECK(g3.brute_count == 4);
    CHECK(g3.delta_unordered == 2);
    auto g4 = isotypic_glue_count(x, {Int(-3), Int(1)}, 3, 4);
    CHECK(g4.brute_count == 3);
    auto g5 = isotypic_glue_count(x, {Int(-9), Int(1)}, 3, 5);
    CHECK(g5.brute_count == 9);
    CHECK_THROWS_AS(isotypic_glue_count(x, x, 2, 6), PreconditionError);  // common factor
    CHECK_THROWS_AS(isotypic_glue_count(x, {Int(-4), Int(1)}, 2, 3),
                    PrecisionInsufficientError);
}

TEST_CASE("resultant and discriminant valuations") {
    poly::Poly x = {Int(0), Int(1)};
    auto v = resultant_valuation(x, {Int(-2), Int(1)}, 2);
    CHECK_FALSE(v.infinite);
    CHECK(v.v == 1);
    auto d = discriminant_valuation({Int(-2), Int(0), Int(1)}, 2);
    CHECK(d.v == 3);  // disc = 8
    auto inf = resultant_valuation({Int(-1), Int(1)}, {Int(-1), Int(1)}, 2);
    CHECK(inf.infinite);
}

TEST_CASE("closed-form orbit bounds") {
    CHECK(stable_orbit_bound(1, 0, 2) == 1);
    CHECK(stable_orbit_bound(2, 1, 2) == 256);
    auto gb = global_orbit_bound(1, 2);
    CHECK(gb.decimal == doctest::Approx(64.0));  // (2 sqrt 2)^4
}

TEST_CASE("stable lattice totals stay under the orbit bound") {
    // companion of a squarefree polynomial, delta = val disc
    poly::Poly f = {Int(-2), Int(0), Int(1)};  // x^2 - 2, disc 8, delta = 3
    TruncatedMatrix gamma{2, 5, 2, {{0, 2}, {1, 0}}};
    auto counts = count_stable_sublattices(gamma, 4);
    Int total = 0;
    for (auto& [c, cnt] : counts) total += cnt;
    auto dv = discriminant_valuation(f, 2);
    CHECK(total <= stable_orbit_bound(1, dv.v, 2));
}
