#include "avcensus/quadint.hpp"

#include "avcensus/numfield.hpp"

#include <sstream>

namespace avc::quadint {

QuadRing QuadRing::make(unsigned long d) {
    if (!numfield::is_squarefree(d)) throw PreconditionError("d must be squarefree and positive");
    QuadRing R;
    R.d = d;
    R.half = (d % 4 == 3);
    R.wnorm = R.half ? Int((long)((1 + d) / 4)) : Int((long)d);
    R.D = R.half ? -long(d) : -4 * long(d);
    return R;
}

QuadInt add(const QuadInt& a, const QuadInt& b) { return {a.x + b.x, a.y + b.y}; }
QuadInt sub(const QuadInt& a, const QuadInt& b) { return {a.x - b.x, a.y - b.y}; }
QuadInt neg(const QuadInt& a) { return {-a.x, -a.y}; }

QuadInt mul(const QuadRing& R, const QuadInt& a, const QuadInt& b) {
    // (x1 + y1 w)(x2 + y2 w); w^2 = -d, or w^2 = w - (1+d)/4
    Int xx = a.x * b.x;
    Int cross = a.x * b.y + a.y * b.x;
    Int yy = a.y * b.y;
    if (R.half) return {xx - yy * R.wnorm, cross + yy};
    return {xx - yy * Int((long)R.d), cross};
}

QuadInt conj(const QuadRing& R, const QuadInt& a) {
    // conj(w) = -w, or 1 - w
    if (R.half) return {a.x + a.y, -a.y};
    return {a.x, -a.y};
}

Int norm(const QuadRing& R, const QuadInt& a) {
    if (R.half) {
        // N(x + y w) = x^2 + xy + y^2 (1+d)/4
        return a.x * a.x + a.x * a.y + a.y * a.y * R.wnorm;
    }
    return a.x * a.x + Int((long)R.d) * a.y * a.y;
}

Int trace(const QuadRing& R, const QuadInt& a) {
    return R.half ? Int(2 * a.x + a.y) : Int(2 * a.x);
}

std::string to_string(const QuadInt& a) {
    std::ostringstream os;
    os << "[" << a.x << "," << a.y << "]";
    return os.str();
}

QuadRat to_quadrat(const QuadRing& R, const QuadInt& a) {
    if (R.half) {
        // x + y(1+sqrt(-d))/2
        return {Rat(a.x) + Rat(a.y) / 2, Rat(a.y) / 2};
    }
    return {Rat(a.x), Rat(a.y)};
}

QuadRat qr_add(const QuadRat& a, const QuadRat& b) { return {a.re + b.re, a.im + b.im}; }
QuadRat qr_sub(const QuadRat& a, const QuadRat& b) { return {a.re - b.re, a.im - b.im}; }

QuadRat qr_mul(const QuadRing& R, const QuadRat& a, const QuadRat& b) {
    Rat d((long)R.d);
    return {a.re * b.re - d * a.im * b.im, a.re * b.im + a.im * b.re};
}

QuadRat qr_div(const QuadRing& R, const QuadRat& a, const QuadRat& b) {
    Rat d((long)R.d);
    Rat nb = b.re * b.re + d * b.im * b.im;
    if (nb == 0) throw InternalAssertionError("division by zero in Q(sqrt(-d))");
    QuadRat num = qr_mul(R, a, QuadRat{b.re, -b.im});
    return {num.re / nb, num.im / nb};
}

QuadRat qr_conj(const QuadRat& a) { return {a.re, -a.im}; }

}  // namespace avc::quadint
