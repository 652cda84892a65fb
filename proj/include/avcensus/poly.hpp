#pragma once

#include <vector>

#include "avcensus/support.hpp"

namespace avc::poly {

// Integer polynomial, coefficients ascending: c[i] is the coefficient of x^i.
// The zero polynomial is the empty vector.
using Poly = std::vector<Int>;

void normalize(Poly& p);
int degree(const Poly& p);  // -1 for the zero polynomial
bool is_zero(const Poly& p);

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Int& c);
Poly derivative(const Poly& a);

Int eval(const Poly& a, const Int& x);
Rat eval(const Poly& a, const Rat& x);

Int content(const Poly& a);
Poly primitive_part(const Poly& a);

// Exact quotient; throws InternalAssertionError if b does not divide a.
Poly divide_exact(const Poly& a, const Poly& b);
bool divides(const Poly& b, const Poly& a);

// gcd over Q, returned primitive with positive leading coefficient
Poly gcd(Poly a, Poly b);
Poly squarefree_part(const Poly& a);

// Sylvester-determinant resultant (Bareiss fraction-free elimination).
Int resultant(const Poly& a, const Poly& b);
// disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f)
Int discriminant(const Poly& a);

// Sturm chain of a squarefree polynomial; counts distinct real roots.
struct SturmChain {
    std::vector<Poly> chain;
    explicit SturmChain(const Poly& squarefree);
    int variations_at(const Rat& x) const;
    int variations_at_neg_inf() const;
    int variations_at_pos_inf() const;
};

// distinct real roots of a squarefree polynomial over all of R
int count_real_roots(const Poly& squarefree);
// distinct real roots in the half-open interval (a, b]; a, b must not be roots
int count_real_roots_in(const Poly& squarefree, const Rat& a, const Rat& b);

}  // namespace avc::poly
