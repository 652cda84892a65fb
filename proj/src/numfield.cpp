#include "avcensus/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace avc::numfield {

bool is_squarefree(unsigned long d) {
    if (d == 0) return false;
    for (unsigned long f = 2; f * f <= d; ++f) {
        if (d % (f * f) == 0) return false;
    }
    return true;
}

ImagQuadField ImagQuadField::make(unsigned long d) {
    if (!is_squarefree(d)) throw PreconditionError("d must be squarefree and positive");
    ImagQuadField F;
    F.d = d;
    F.D = (d % 4 == 3) ? -long(d) : -4 * long(d);
    F.w = (F.D == -3) ? 6 : (F.D == -4 ? 4 : 2);
    F.h = class_number(d);
    return F;
}

unsigned long class_number(unsigned long d, unsigned long max_d) {
    if (d > max_d) throw LimitExceededError("class_number d too large", long(max_d));
    if (!is_squarefree(d)) throw PreconditionError("d must be squarefree and positive");
    long D = (d % 4 == 3) ? -long(d) : -4 * long(d);
    unsigned long absD = (unsigned long)(-D);
    // reduced forms (a,b,c): b^2 - 4ac = D, |b| <= a <= c, b >= 0 when |b| = a
    // or a = c, gcd(a,b,c) = 1
    unsigned long count = 0;
    for (long a = 1; 3 * a * a <= long(absD); ++a) {
        for (long b = -a; b <= a; ++b) {
            long num = b * b - D;  // = b^2 + absD
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if ((b == -a || a == c) && b < 0) continue;
            long g = std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
            if (g != 1) continue;
            ++count;
        }
    }
    return count;
}

namespace {

struct Form {
    long a, b, c;
    bool operator<(const Form& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

// classical normalize/rho reduction to the canonical reduced representative
Form reduce_form(Form f, long D) {
    auto normalize = [&](Form& t) {
        // bring b into (-a, a]
        long r = ((t.b + t.a) % (2 * t.a) + 2 * t.a) % (2 * t.a) - t.a;  // in (-a, a]
        long q = (t.b - r) / (2 * t.a);
        t.c = t.c - q * t.b + q * q * t.a;
        t.b = r;
    };
    normalize(f);
    while (f.a > f.c) {
        f = Form{f.c, -f.b, f.a};
        normalize(f);
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    if (f.b == -f.a) f.b = f.a;  // boundary convention
    (void)D;
    return f;
}

}  // namespace

unsigned long class_number_bruteforce(unsigned long d) {
    if (!is_squarefree(d)) throw PreconditionError("d must be squarefree and positive");
    long D = (d % 4 == 3) ? -long(d) : -4 * long(d);
    long absD = -D;
    std::set<Form> reps;
    // every class has a representative with |b| <= a <= sqrt(|D|/3)
    for (long a = 1; 3 * a * a <= absD; ++a) {
        for (long b = -a; b <= a; ++b) {
            long num = b * b + absD;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            long g = std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
            if (g != 1) continue;
            reps.insert(reduce_form(Form{a, b, c}, D));
        }
    }
    return reps.size();
}

std::vector<unsigned long> class_number_one_scan(unsigned long limit) {
    std::vector<unsigned long> out;
    for (unsigned long d = 1; d <= limit; ++d) {
        if (!is_squarefree(d)) continue;
        if (class_number(d) == 1) out.push_back(d);
    }
    return out;
}

double regulator_lower_bound(unsigned r1, unsigned r2) {
    if (r1 + r2 < 1) throw PreconditionError("need r1 + r2 >= 1");
    double v = 0.00299 * std::exp(0.48 * r1 + 0.06 * r2);
    return std::max(v, 1.0 / 500.0);
}

double zeta_residue_upper_bound(unsigned d, const Int& D_K) {
    if (d < 2) throw PreconditionError("degree 1 is degenerate for this bound");
    if (D_K < 3) throw PreconditionError("need D_K >= 3");
    double logD = std::log(D_K.get_d());
    double base = std::exp(1.0) * logD / (2.0 * (d - 1));
    return std::pow(base, double(d - 1));
}

LogValue class_number_bound_chain(const std::vector<CMBoundInput>& fields) {
    if (fields.empty()) throw PreconditionError("field list must be nonempty");
    double ln = 0.0;
    double two_g = 0.0;
    for (const auto& f : fields) {
        if (f.degree != f.r1 + 2 * f.r2) throw PreconditionError("degree must equal r1 + 2 r2");
        if (f.abs_disc < 1) throw PreconditionError("D_K must be >= 1");
        if (f.degree > 1 && f.abs_disc < 3)
            throw PreconditionError("degree > 1 needs D_K >= 3 (log factor degenerate)");
        double logD = std::log(f.abs_disc.get_d());
        ln += 0.5 * logD;
        // the exponent d-1 is 0 for degree 1, so (log D)^{d-1} contributes nothing
        if (f.degree > 1) ln += double(f.degree - 1) * std::log(logD);
        two_g += f.degree;
    }
    double g = two_g / 2.0;
    ln += g * std::log(500.0) + g;
    LogValue lv;
    lv.ln_value = ln;
    lv.log2_value = ln / std::log(2.0);
    lv.per_unit_g = g > 0 ? ln / g : 0.0;
    return lv;
}

int QuadCharacter::operator()(const Int& n) const { return kronecker(Int(D), n); }

Rat bernoulli(unsigned n) {
    static std::vector<Rat> cache = {Rat(1)};
    while (cache.size() <= n) {
        unsigned m = unsigned(cache.size());
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rat s(0);
        for (unsigned j = 0; j < m; ++j) s += Rat(binomial(m + 1, j)) * cache[j];
        Rat b = -s / Rat(binomial(m + 1, m));
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[n];
}

Rat generalized_bernoulli(unsigned k, long D) {
    unsigned long f = (unsigned long)(D < 0 ? -D : D);
    // B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f)
    Rat sum(0);
    QuadCharacter chi{D};
    for (unsigned long a = 1; a <= f; ++a) {
        int ca = chi(Int((long)a));
        if (ca == 0) continue;
        // Bernoulli polynomial B_k(x) = sum_j C(k,j) B_j x^{k-j}
        Rat x(Int((long)a), Int((long)f));
        x.canonicalize();
        Rat bk(0);
        Rat xp(1);
        // evaluate with Horner on descending j
        for (unsigned j = 0; j <= k; ++j) {
            Rat term = Rat(binomial(k, j)) * bernoulli(j);
            // x^{k-j}
            Rat xe(1);
            for (unsigned t = 0; t < k - j; ++t) xe *= x;
            bk += term * xe;
        }
        (void)xp;
        sum += (ca > 0 ? bk : Rat(-bk));
    }
    Rat out = sum;
    for (unsigned t = 0; t + 1 < k; ++t) out *= Rat(Int((long)f));
    if (k == 0) out /= Rat(Int((long)f));
    out.canonicalize();
    return out;
}

double LValue::approx() const {
    double v = to_double(rational) * std::pow(std::acos(-1.0), double(pi_power));
    if (sqrt_pow != 0) v *= std::pow(std::sqrt(double(abs_disc)), double(sqrt_pow));
    return v;
}

LValue dirichlet_L_exact(const QuadCharacter& chi, unsigned k) {
    if (k < 1) throw PreconditionError("need k >= 1");
    LValue out;
    out.pi_power = k;
    if (chi.D == 1) {
        if (k % 2 != 0)
            throw PreconditionError("zeta at odd k is outside the rational*pi^k range");
        // zeta(k) = (-1)^{k/2+1} B_k 2^{k-1} / k! * pi^k
        Rat r = bernoulli(k) * Rat(pow_int(2ul, k - 1)) / Rat(factorial(k));
        if ((k / 2 + 1) % 2 == 1) r = -r;
        if (r <= 0) throw InternalAssertionError("zeta(k) came out non-positive");
        r.canonicalize();
        out.rational = r;
        out.abs_disc = 1;
        out.sqrt_pow = 0;
        return out;
    }
    if (chi.D >= 0) throw PreconditionError("only odd quadratic characters (D < 0) supported");
    if (k % 2 != 1) throw PreconditionError("L(k, chi_D) with D < 0 needs odd k");
    unsigned long f = chi.conductor();
    // L(k, chi) = (-1)^{1 + (k-1)/2} (2 pi / f)^k sqrt(f) B_{k,chi} / (2 k!)
    Rat r = generalized_bernoulli(k, chi.D) * Rat(pow_int(2ul, k)) /
            (Rat(pow_int(Int((long)f), k)) * Rat(2) * Rat(factorial(k)));
    if ((1 + (k - 1) / 2) % 2 == 1) r = -r;
    out.rational = r;
    out.abs_disc = f;
    out.sqrt_pow = 1;
    // fold sqrt(f) into the rational when f is a perfect square
    Int root;
    if (is_perfect_square(Int((long)f), &root)) {
        out.rational *= Rat(root);
        out.sqrt_pow = 0;
    }
    out.rational.canonicalize();
    return out;
}

Int gl_order(unsigned n, unsigned long q) {
    // q^{n(n-1)/2} prod_{k=1}^{n} (q^k - 1)
    Int r = pow_int(q, (unsigned long)n * (n - 1) / 2);
    for (unsigned k = 1; k <= n; ++k) r *= pow_int(q, k) - 1;
    return r;
}

Int minkowski_bound(unsigned n) {
    if (n < 1 || n > 32) throw PreconditionError("minkowski_bound needs 1 <= n <= 32");
    Int out = 1;
    for (unsigned long p : primes_up_to(n + 1)) {
        if (p == 2) continue;
        unsigned long M = 0;
        for (unsigned long den = p - 1; n / den > 0; den *= p) M += n / den;
        out *= pow_int(p, M);
    }
    out *= pow_int(2ul, valuation(gl_order(n, 3), Int(2)));
    return out;
}

}  // namespace avc::numfield
