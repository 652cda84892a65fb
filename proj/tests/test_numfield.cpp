#include <doctest.h>

#include <cmath>

#include "avcensus/numfield.hpp"

using namespace avc;
using namespace avc::numfield;

TEST_CASE("class numbers by reduced forms") {
    CHECK(class_number(1) == 1);
    CHECK(class_number(2) == 1);
    CHECK(class_number(5) == 2);
    CHECK(class_number(23) == 3);
    CHECK(class_number(163) == 1);
    CHECK_THROWS_AS(class_number(4), PreconditionError);  // not squarefree
    CHECK_THROWS_AS(class_number(12), PreconditionError);
}

TEST_CASE("the two counters agree on a range") {
    for (unsigned long d = 1; d <= 500; ++d) {
        if (!is_squarefree(d)) continue;
        CHECK(class_number(d) == class_number_bruteforce(d));
    }
}

TEST_CASE("class number one scan") {
    auto full = class_number_one_scan(200);
    CHECK(full == std::vector<unsigned long>{1, 2, 3, 7, 11, 19, 43, 67, 163});
    CHECK(class_number_one_scan(5) == std::vector<unsigned long>{1, 2, 3});
    CHECK(class_number_one_scan(1) == std::vector<unsigned long>{1});
}

TEST_CASE("field invariants") {
    auto F3 = ImagQuadField::make(3);
    CHECK(F3.D == -3);
    CHECK(F3.w == 6);
    auto F1 = ImagQuadField::make(1);
    CHECK(F1.D == -4);
    CHECK(F1.w == 4);
    auto F5 = ImagQuadField::make(5);
    CHECK(F5.D == -20);
    CHECK(F5.w == 2);
    CHECK(F5.h == 2);
}

TEST_CASE("regulator lower bound") {
    CHECK(regulator_lower_bound(1, 0) == doctest::Approx(0.00299 * std::exp(0.48)));
    CHECK(regulator_lower_bound(0, 1) == doctest::Approx(0.00299 * std::exp(0.06)));
    for (unsigned r1 = 0; r1 <= 4; ++r1)
        for (unsigned r2 = 0; r2 <= 4; ++r2) {
            if (r1 + r2 == 0) continue;
            CHECK(regulator_lower_bound(r1, r2) >= 1.0 / 500.0);
        }
}

TEST_CASE("zeta residue upper bound") {
    CHECK(zeta_residue_upper_bound(2, Int(4)) ==
          doctest::Approx(std::exp(1.0) * std::log(4.0) / 2.0));
    CHECK(zeta_residue_upper_bound(3, Int(49)) ==
          doctest::Approx(std::pow(std::exp(1.0) * std::log(49.0) / 4.0, 2)).epsilon(1e-9));
    CHECK(zeta_residue_upper_bound(2, Int(3)) < zeta_residue_upper_bound(2, Int(4)));
    CHECK_THROWS_AS(zeta_residue_upper_bound(1, Int(5)), PreconditionError);
}

TEST_CASE("class number bound chain") {
    // single field d = 2, D_K = 4, g = 1: sqrt(4) (log 4) 500 e
    CMBoundInput f;
    f.degree = 2;
    f.r1 = 0;
    f.r2 = 1;
    f.abs_disc = 4;
    auto v = class_number_bound_chain({f});
    CHECK(v.ln_value ==
          doctest::Approx(std::log(2.0) + std::log(std::log(4.0)) + std::log(500.0) + 1.0));
    // degree-1 fields carry no log-power factor; (log D)^0 = 1
    CMBoundInput u;
    u.degree = 1;
    u.r1 = 1;
    u.r2 = 0;
    u.abs_disc = 1;
    auto w = class_number_bound_chain({u});
    CHECK(w.per_unit_g == doctest::Approx(std::log(500.0) + 1.0));
    CHECK_THROWS_AS(class_number_bound_chain({}), PreconditionError);
}

TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == Rat(-1, 2));
    CHECK(bernoulli(2) == Rat(1, 6));
    CHECK(bernoulli(4) == Rat(-1, 30));
    CHECK(bernoulli(12) == Rat(-691, 2730));
}

TEST_CASE("exact zeta and L values") {
    auto z2 = dirichlet_L_exact(QuadCharacter{1}, 2);
    CHECK(z2.rational == Rat(1, 6));
    CHECK(z2.pi_power == 2);
    auto z4 = dirichlet_L_exact(QuadCharacter{1}, 4);
    CHECK(z4.rational == Rat(1, 90));
    auto L1 = dirichlet_L_exact(QuadCharacter{-4}, 1);
    CHECK(L1.rational == Rat(1, 4));  // classically pi/4, sqrt(4) folded
    CHECK(L1.sqrt_pow == 0);
    auto L3 = dirichlet_L_exact(QuadCharacter{-4}, 3);
    CHECK(L3.rational == Rat(1, 32));  // pi^3/32
    auto Lm3 = dirichlet_L_exact(QuadCharacter{-3}, 1);
    CHECK(Lm3.rational == Rat(1, 9));  // pi sqrt(3)/9 = pi/(3 sqrt 3)
    CHECK(Lm3.sqrt_pow == 1);
    // parity mismatches rejected
    CHECK_THROWS_AS(dirichlet_L_exact(QuadCharacter{1}, 3), PreconditionError);
    CHECK_THROWS_AS(dirichlet_L_exact(QuadCharacter{-4}, 2), PreconditionError);
}

TEST_CASE("analytic class number identity, exact rational form") {
    // h = -w B_{1,chi} / 2 ties the form count to the L-value machinery
    for (unsigned long d = 1; d <= 120; ++d) {
        if (!is_squarefree(d)) continue;
        auto F = ImagQuadField::make(d);
        Rat rhs = Rat(-long(F.w)) * generalized_bernoulli(1, F.D) / 2;
        rhs.canonicalize();
        CHECK(Rat(long(F.h)) == rhs);
    }
}

TEST_CASE("L(1, chi_D) positive for negative fundamental discriminants") {
    for (unsigned long d : {1ul, 2ul, 3ul, 5ul, 6ul, 7ul, 10ul, 23ul}) {
        auto F = ImagQuadField::make(d);
        auto L = dirichlet_L_exact(QuadCharacter{F.D}, 1);
        CHECK(L.rational > 0);
    }
}

TEST_CASE("finite-subgroup bound") {
    CHECK(minkowski_bound(1) == 2);
    CHECK(minkowski_bound(2) == 48);
    for (unsigned n = 1; n <= 8; ++n) {
        Int b = minkowski_bound(n);
        Int sp = pow_int(2ul, n) * factorial(n);
        CHECK(b % sp == 0);  // divisible by the signed permutation order
    }
    CHECK(gl_order(2, 3) == 48);
}
