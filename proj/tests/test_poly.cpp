#include <doctest.h>

#include "avcensus/poly.hpp"

using namespace avc;
using namespace avc::poly;

TEST_CASE("resultants via Sylvester determinants") {
    Poly x = {Int(0), Int(1)};
    Poly xm2 = {Int(-2), Int(1)};
    // Res(f, g) = lc(f)^{deg g} prod g(roots of f): Res(x, x-2) = -2
    CHECK(resultant(x, xm2) == -2);
    CHECK(resultant(xm2, x) == 2);
    Poly xm1 = {Int(-1), Int(1)};
    CHECK(resultant(xm1, xm1) == 0);
    // Res(x^2+1, x^2+3) = prod of g at roots of f = 2 * 2
    Poly f = {Int(1), Int(0), Int(1)};
    Poly g = {Int(3), Int(0), Int(1)};
    CHECK(resultant(f, g) == 4);
}

TEST_CASE("discriminants") {
    // disc(x^2 + c) = -4c
    Poly f = {Int(-2), Int(0), Int(1)};
    CHECK(discriminant(f) == 8);
    Poly g = {Int(1), Int(1), Int(1)};  // x^2 + x + 1
    CHECK(discriminant(g) == -3);
    // disc(x^3 - x) = 4
    Poly h = {Int(0), Int(-1), Int(0), Int(0 + 0)};
    h = {Int(0), Int(-1), Int(0), Int(1)};
    CHECK(discriminant(h) == 4);
}

TEST_CASE("sturm root counting") {
    // x^2 - 2: two real roots, one in (0, 2]
    Poly f = {Int(-2), Int(0), Int(1)};
    CHECK(count_real_roots(f) == 2);
    CHECK(count_real_roots_in(f, Rat(0), Rat(2)) == 1);
    CHECK(count_real_roots_in(f, Rat(-2), Rat(2)) == 2);
    // x^2 + 1: none
    Poly g = {Int(1), Int(0), Int(1)};
    CHECK(count_real_roots(g) == 0);
    // (x-1)(x-2)(x-3)
    Poly h = {Int(-6), Int(11), Int(-6), Int(1)};
    CHECK(count_real_roots(h) == 3);
    CHECK(count_real_roots_in(h, Rat(3, 2), Rat(5, 2)) == 1);
}

TEST_CASE("squarefree part strips multiplicity") {
    // (x-1)^2 (x+2)
    Poly f = mul(mul(Poly{Int(-1), Int(1)}, Poly{Int(-1), Int(1)}), Poly{Int(2), Int(1)});
    Poly s = squarefree_part(f);
    CHECK(degree(s) == 2);
    CHECK(count_real_roots(s) == 2);
}

TEST_CASE("exact division") {
    Poly f = mul(Poly{Int(-1), Int(1)}, Poly{Int(3), Int(2)});
    CHECK(divides(Poly{Int(-1), Int(1)}, f));
    CHECK_FALSE(divides(Poly{Int(1), Int(1)}, f));
    Poly q = divide_exact(f, Poly{Int(-1), Int(1)});
    CHECK(q == Poly{Int(3), Int(2)});
}
