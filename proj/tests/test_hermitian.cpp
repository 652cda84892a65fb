#include <doctest.h>

#include <fstream>
#include <json.hpp>

#include "avcensus/hermitian.hpp"
#include "avcensus/numfield.hpp"
#include "avcensus/zlattice.hpp"

using namespace avc;
using namespace avc::hermitian;

namespace {
const unsigned long kNine[] = {1, 2, 3, 7, 11, 19, 43, 67, 163};
}

TEST_CASE("rank 1: one class, mass 1/w") {
    for (unsigned long d : kNine) {
        auto cls = enumerate_classes(d, 1);
        REQUIRE(cls.size() == 1);
        cls[0].validate();
        CHECK(cls[0].e[0][0] == quadint::QuadInt{Int(1), Int(0)});
        auto F = numfield::ImagQuadField::make(d);
        CHECK(mass_brute(d, 1) == Rat(1, long(F.w)));
        CHECK(automorphism_count(cls[0]) == long(F.w));
    }
}

TEST_CASE("rank 2 class data, frozen from the enumeration oracle") {
    auto c1 = enumerate_classes(1, 2);
    REQUIRE(c1.size() == 1);
    CHECK(automorphism_count(c1[0]) == 32);
    CHECK(c1[0].norm_gcd() == 1);

    auto c2 = enumerate_classes(2, 2);
    REQUIRE(c2.size() == 2);  // the standard class and an even-norm class
    unsigned evens = 0;
    for (const auto& g : c2) {
        g.validate();
        if (g.norm_gcd() == 2) {
            ++evens;
            CHECK(automorphism_count(g) == 48);
        } else {
            CHECK(automorphism_count(g) == 8);
        }
    }
    CHECK(evens == 1);

    auto c3 = enumerate_classes(3, 2);
    REQUIRE(c3.size() == 1);
    CHECK(automorphism_count(c3[0]) == 72);

    auto c7 = enumerate_classes(7, 2);
    REQUIRE(c7.size() == 1);
    CHECK(automorphism_count(c7[0]) == 8);
}

TEST_CASE("mass formula equals enumeration, exact rationals") {
    for (unsigned long d : {1ul, 2ul, 3ul, 7ul}) {
        for (unsigned n : {1u, 2u}) {
            auto audit = mass_formula(d, n);
            CHECK(audit.pi_cancelled);
            CHECK(audit.total == mass_brute(d, n));
        }
    }
    CHECK(mass_formula(1, 1).total == Rat(1, 4));
    CHECK(mass_formula(3, 1).total == Rat(1, 6));
    CHECK(mass_formula(1, 2).total == Rat(1, 32));
    CHECK(mass_formula(2, 2).total == Rat(7, 48));
}

TEST_CASE("isometry is reflexive and symmetric on representatives") {
    auto cls = enumerate_classes(2, 2);
    for (size_t i = 0; i < cls.size(); ++i) {
        CHECK(isometric(cls[i], cls[i]));
        for (size_t j = i + 1; j < cls.size(); ++j) {
            CHECK(isometric(cls[i], cls[j]) == isometric(cls[j], cls[i]));
            CHECK_FALSE(isometric(cls[i], cls[j]));
        }
    }
}

TEST_CASE("automorphism groups stay inside the Minkowski bound") {
    for (unsigned long d : {1ul, 3ul, 7ul}) {
        auto cls = enumerate_classes(d, 2);
        for (const auto& g : cls) {
            Int a = automorphism_count(g);
            Int bound = numfield::minkowski_bound(2 * g.n);  // embeds in GL_{2n}(Z)
            CHECK(bound % a == 0);
        }
    }
}

TEST_CASE("mass is stable under a larger search bound") {
    EnumOptions wide;
    wide.bound_scale = 3;
    for (unsigned long d : {1ul, 2ul, 3ul}) {
        CHECK(mass_brute(d, 2) == mass_brute(d, 2, wide));
    }
}

TEST_CASE("orthogonal densities") {
    CHECK(orthogonal_density(1, 3, 0) == Rat(2));
    CHECK(orthogonal_density(2, 3, +1) == Rat(4, 3));
    CHECK(orthogonal_density(2, 3, -1) == Rat(8, 3));
    CHECK(orthogonal_density(2, 7, -1) == Rat(16, 7));
    CHECK(orthogonal_density(3, 3, 0) == Rat(16, 9));  // 2*3*8 / 3^3
}

TEST_CASE("dyadic ranks without calibration are rejected") {
    CHECK_THROWS_AS(mass_formula(1, 3), PreconditionError);
}

TEST_CASE("the shipped fixture matches the built-in table") {
    std::ifstream in("data/hermitian_calibration.json");
    REQUIRE(in.good());
    auto j = nlohmann::json::parse(in);
    CHECK(j.at("version") == 1);
    const auto& builtin = builtin_calibration();
    for (const auto& row : builtin) {
        bool found = false;
        for (const auto& e : j.at("entries")) {
            if (e.at("abs_disc") == row.abs_disc && e.at("rank") == row.rank &&
                e.at("norm_gcd") == row.norm_gcd) {
                CHECK(e.at("beta").at("num").get<std::string>() == row.beta.get_num().get_str());
                CHECK(e.at("beta").at("den").get<std::string>() == row.beta.get_den().get_str());
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("mass and orbit estimates") {
    auto e1 = log_mass_estimate(1, 1, 4);
    CHECK(e1.leading == doctest::Approx(0.0));
    auto e4 = log_mass_estimate(1, 4, 4);
    CHECK(e4.leading == doctest::Approx(16.0 * std::log(4.0)));
    double s = 0;
    for (unsigned t = 1; t <= 4; ++t)
        s += std::lgamma(double(t)) - t * std::log(2 * std::acos(-1.0));
    CHECK(e4.exact_part == doctest::Approx(s + 5.0 * std::log(4.0)));

    CHECK(orbit_count_estimate({1}, {10}) == doctest::Approx(100.0 * std::log(10.0)));
    CHECK(orbit_count_estimate({1, 1, 1}, {1, 1, 1}) == doctest::Approx(0.0));
    CHECK(orbit_count_estimate({1, 1}, {5, 5}) == doctest::Approx(2 * 25.0 * std::log(5.0)));
    CHECK_THROWS_AS(orbit_count_estimate({1}, {1, 2}), PreconditionError);
}

TEST_CASE("unimodular Z-lattices") {
    using namespace avc::zlattice;
    for (unsigned n = 1; n <= 5; ++n) {
        auto cls = enumerate_unimodular(n);
        REQUIRE(cls.size() == 1);
        cls[0].validate();
        CHECK_FALSE(cls[0].is_even());
        CHECK(automorphism_count(cls[0]) == signed_permutation_order(n));
        CHECK(mass_brute(n) == Rat(1, signed_permutation_order(n)));
    }
    CHECK(signed_permutation_order(8) == 10321920);
    CHECK(mass_even_unimodular(8) == Rat(Int(1), Int(696729600)));
    CHECK_THROWS_AS(mass_even_unimodular(4), PreconditionError);
    // the deep rank-8 branch is opt-in
    CHECK_THROWS_AS(enumerate_unimodular(8), PreconditionError);
}
