#include "avcensus/poly.hpp"

#include <algorithm>

namespace avc::poly {

void normalize(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return int(p.size()) - 1; }

bool is_zero(const Poly& p) { return p.empty(); }

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    normalize(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    normalize(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    normalize(r);
    return r;
}

Poly scale(const Poly& a, const Int& c) {
    if (c == 0) return {};
    Poly r = a;
    for (auto& x : r) x *= c;
    return r;
}

Poly derivative(const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Int(long(i));
    normalize(r);
    return r;
}

Int eval(const Poly& a, const Int& x) {
    Int r = 0;
    for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
    return r;
}

Rat eval(const Poly& a, const Rat& x) {
    Rat r = 0;
    for (size_t i = a.size(); i-- > 0;) r = r * x + Rat(a[i]);
    return r;
}

Int content(const Poly& a) {
    Int g = 0;
    for (const auto& c : a) {
        Int ac = abs(c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ac.get_mpz_t());
    }
    return g;
}

Poly primitive_part(const Poly& a) {
    Int g = content(a);
    if (g == 0) return {};
    Poly r = a;
    for (auto& c : r) c /= g;
    if (r.back() < 0)
        for (auto& c : r) c = -c;
    return r;
}

bool divides(const Poly& b, const Poly& a) {
    if (is_zero(b)) return is_zero(a);
    // rational long division, check exactness
    std::vector<Rat> rem(a.begin(), a.end());
    int db = degree(b);
    Rat lb(b[db]);
    for (int i = int(rem.size()) - 1; i >= db; --i) {
        if (rem[i] == 0) continue;
        Rat f = rem[i] / lb;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * Rat(b[j]);
    }
    for (const auto& c : rem)
        if (c != 0) return false;
    return true;
}

Poly divide_exact(const Poly& a, const Poly& b) {
    if (is_zero(b)) throw InternalAssertionError("division by zero polynomial");
    std::vector<Rat> rem(a.begin(), a.end());
    int db = degree(b);
    Rat lb(b[db]);
    std::vector<Rat> quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    for (int i = int(rem.size()) - 1; i >= db; --i) {
        if (rem[i] == 0) continue;
        Rat f = rem[i] / lb;
        quot[i - db] = f;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * Rat(b[j]);
    }
    for (const auto& c : rem)
        if (c != 0) throw InternalAssertionError("inexact polynomial division");
    Poly q(quot.size());
    for (size_t i = 0; i < quot.size(); ++i) {
        if (quot[i].get_den() != 1) throw InternalAssertionError("non-integral exact quotient");
        q[i] = quot[i].get_num();
    }
    normalize(q);
    return q;
}

namespace {

// primitive pseudo-remainder style euclidean step over Q, result primitive
Poly rational_rem(const Poly& a, const Poly& b) {
    std::vector<Rat> rem(a.begin(), a.end());
    int db = degree(b);
    Rat lb(b[db]);
    for (int i = int(rem.size()) - 1; i >= db; --i) {
        if (rem[i] == 0) continue;
        Rat f = rem[i] / lb;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * Rat(b[j]);
    }
    // clear denominators, return primitive integer polynomial
    Int den = 1;
    for (const auto& c : rem) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    Poly r(rem.size());
    for (size_t i = 0; i < rem.size(); ++i) {
        Rat v = rem[i] * Rat(den);
        r[i] = v.get_num();
    }
    normalize(r);
    return r;
}

}  // namespace

Poly gcd(Poly a, Poly b) {
    normalize(a);
    normalize(b);
    if (is_zero(a)) return primitive_part(b);
    if (is_zero(b)) return primitive_part(a);
    a = primitive_part(a);
    b = primitive_part(b);
    while (!is_zero(b)) {
        Poly r = rational_rem(a, b);
        a = std::move(b);
        b = primitive_part(r);
    }
    return a;
}

Poly squarefree_part(const Poly& a) {
    if (degree(a) <= 0) return a;
    Poly g = gcd(a, derivative(a));
    if (degree(g) == 0) return primitive_part(a);
    return primitive_part(divide_exact(primitive_part(a), g));
}

namespace {

// Bareiss fraction-free determinant of an n x n integer matrix (destructive)
Int bareiss_det(std::vector<std::vector<Int>> m) {
    size_t n = m.size();
    if (n == 0) return Int(1);
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return Int(0);
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

}  // namespace

Int resultant(const Poly& a, const Poly& b) {
    int da = degree(a), db = degree(b);
    if (da < 0 || db < 0) return Int(0);
    if (da == 0) return pow_int(a[0], (unsigned long)db);
    if (db == 0) return pow_int(b[0], (unsigned long)da);
    size_t n = size_t(da + db);
    std::vector<std::vector<Int>> syl(n, std::vector<Int>(n, Int(0)));
    // db rows of a's coefficients, then da rows of b's
    for (int r = 0; r < db; ++r)
        for (int i = 0; i <= da; ++i) syl[r][r + i] = a[da - i];
    for (int r = 0; r < da; ++r)
        for (int i = 0; i <= db; ++i) syl[db + r][r + i] = b[db - i];
    return bareiss_det(std::move(syl));
}

Int discriminant(const Poly& a) {
    int d = degree(a);
    if (d < 1) throw PreconditionError("discriminant needs degree >= 1");
    if (d == 1) return Int(1);
    Int res = resultant(a, derivative(a));
    Int lc = a[d];
    Int num = res / lc;
    if (num * lc != res) throw InternalAssertionError("discriminant division not exact");
    return (long(d) * (long(d) - 1) / 2) % 2 == 0 ? num : Int(-num);
}

namespace {

// divide by content without touching the sign (Sturm chains need it)
Poly primitive_keep_sign(const Poly& a) {
    Int g = content(a);
    if (g == 0) return {};
    Poly r = a;
    for (auto& c : r) c /= g;
    return r;
}

}  // namespace

SturmChain::SturmChain(const Poly& squarefree) {
    Poly p0 = primitive_keep_sign(squarefree);
    Poly p1 = primitive_keep_sign(derivative(p0));
    chain.push_back(p0);
    if (is_zero(p1)) return;
    chain.push_back(p1);
    for (;;) {
        const Poly& pa = chain[chain.size() - 2];
        const Poly& pb = chain[chain.size() - 1];
        if (degree(pb) <= 0) break;
        Poly r = rational_rem(pa, pb);
        if (is_zero(r)) break;
        for (auto& c : r) c = -c;
        chain.push_back(primitive_keep_sign(r));
    }
}

namespace {
int sgn(const Int& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }
int sgn(const Rat& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

int count_variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}
}  // namespace

int SturmChain::variations_at(const Rat& x) const {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& p : chain) signs.push_back(sgn(eval(p, x)));
    return count_variations(signs);
}

int SturmChain::variations_at_neg_inf() const {
    std::vector<int> signs;
    for (const auto& p : chain) {
        int d = degree(p);
        if (d < 0) {
            signs.push_back(0);
            continue;
        }
        int s = sgn(p[d]);
        signs.push_back(d % 2 == 0 ? s : -s);
    }
    return count_variations(signs);
}

int SturmChain::variations_at_pos_inf() const {
    std::vector<int> signs;
    for (const auto& p : chain) {
        int d = degree(p);
        signs.push_back(d < 0 ? 0 : sgn(p[d]));
    }
    return count_variations(signs);
}

int count_real_roots(const Poly& squarefree) {
    if (degree(squarefree) <= 0) return 0;
    SturmChain s(squarefree);
    return s.variations_at_neg_inf() - s.variations_at_pos_inf();
}

int count_real_roots_in(const Poly& squarefree, const Rat& a, const Rat& b) {
    if (degree(squarefree) <= 0) return 0;
    if (eval(squarefree, a) == 0 || eval(squarefree, b) == 0)
        throw PreconditionError("Sturm interval endpoint is a root");
    SturmChain s(squarefree);
    return s.variations_at(a) - s.variations_at(b);
}

}  // namespace avc::poly
