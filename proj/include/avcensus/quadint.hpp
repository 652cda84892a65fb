#pragma once

#include <string>

#include "avcensus/support.hpp"

namespace avc::quadint {

// Ring of integers of Q(sqrt(-d)), d squarefree.  Integral basis {1, w} with
// w = sqrt(-d) for d = 1,2 mod 4 and w = (1+sqrt(-d))/2 for d = 3 mod 4.
struct QuadRing {
    unsigned long d = 1;
    bool half = false;  // true when w = (1+sqrt(-d))/2
    Int wnorm;          // N(w): d, or (1+d)/4
    long D = -4;        // fundamental discriminant

    static QuadRing make(unsigned long d);
    unsigned long abs_disc() const { return (unsigned long)(-D); }
    unsigned units() const { return D == -3 ? 6 : (D == -4 ? 4 : 2); }
};

// x + y*w
struct QuadInt {
    Int x, y;
    QuadInt() : x(0), y(0) {}
    QuadInt(Int x, Int y) : x(std::move(x)), y(std::move(y)) {}
    bool operator==(const QuadInt& o) const = default;
    bool is_zero() const { return x == 0 && y == 0; }
};

QuadInt add(const QuadInt& a, const QuadInt& b);
QuadInt sub(const QuadInt& a, const QuadInt& b);
QuadInt neg(const QuadInt& a);
QuadInt mul(const QuadRing& R, const QuadInt& a, const QuadInt& b);
QuadInt conj(const QuadRing& R, const QuadInt& a);
Int norm(const QuadRing& R, const QuadInt& a);
Int trace(const QuadRing& R, const QuadInt& a);
std::string to_string(const QuadInt& a);

// element of Q(sqrt(-d)) written on the basis {1, sqrt(-d)}; used for exact
// hermitian determinants
struct QuadRat {
    Rat re, im;  // re + im*sqrt(-d)
    bool is_zero() const { return re == 0 && im == 0; }
};

QuadRat to_quadrat(const QuadRing& R, const QuadInt& a);
QuadRat qr_add(const QuadRat& a, const QuadRat& b);
QuadRat qr_sub(const QuadRat& a, const QuadRat& b);
QuadRat qr_mul(const QuadRing& R, const QuadRat& a, const QuadRat& b);
QuadRat qr_div(const QuadRing& R, const QuadRat& a, const QuadRat& b);
QuadRat qr_conj(const QuadRat& a);

}  // namespace avc::quadint
