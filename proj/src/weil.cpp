#include "avcensus/weil.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace avc::weil {

using poly::Poly;

WeilPolynomial WeilPolynomial::make(unsigned g, unsigned long q, std::vector<Int> a) {
    if (!is_prime_power(q)) throw PreconditionError("q must be a prime power >= 2");
    if (a.size() != g) throw PreconditionError("need exactly g coefficients a_1..a_g");
    WeilPolynomial f;
    f.g = g;
    f.q = q;
    f.a = std::move(a);
    return f;
}

Poly WeilPolynomial::coefficients() const {
    // a_0 = 1, a_{2g-k} = q^{g-k} a_k; coefficient of x^{2g-k} is (-1)^k a_k
    std::vector<Int> full(2 * g + 1);
    full[0] = 1;
    for (unsigned k = 1; k <= g; ++k) full[k] = a[k - 1];
    for (unsigned j = g + 1; j <= 2 * g; ++j) full[j] = pow_int(q, j - g) * full[2 * g - j];
    Poly f(2 * g + 1);
    for (unsigned k = 0; k <= 2 * g; ++k) {
        Int c = full[k];
        f[2 * g - k] = (k % 2 == 0) ? c : Int(-c);
    }
    return f;
}

WeilPolynomial WeilPolynomial::from_full_coefficients(unsigned long q, const Poly& f) {
    int d = poly::degree(f);
    if (d < 0 || d % 2 != 0) throw PreconditionError("degree must be even");
    unsigned g = unsigned(d) / 2;
    if (g > 0 && f[2 * g] != 1) throw PreconditionError("polynomial must be monic");
    std::vector<Int> a(g);
    for (unsigned k = 1; k <= g; ++k) {
        Int c = f[2 * g - k];
        a[k - 1] = (k % 2 == 0) ? c : Int(-c);
    }
    WeilPolynomial w = make(g, q, std::move(a));
    if (w.coefficients() != f)
        throw PreconditionError("coefficients violate the functional equation q^g f(x) = x^{2g} f(q/x)");
    return w;
}

Poly RealWeilPolynomial::coefficients() const {
    Poly h(g + 1);
    h[g] = 1;
    for (unsigned k = 1; k <= g; ++k) h[g - k] = c[k - 1];
    return h;
}

RealWeilPolynomial to_real_weil(const WeilPolynomial& f) {
    unsigned g = f.g;
    Poly r = f.coefficients();
    // f(x) = sum_i b_i x^i (x^2+q)^{g-i}; peel b_i off the top coefficient
    Poly x2q = {Int(f.q), Int(0), Int(1)};
    std::vector<Poly> pw(g + 1);
    pw[0] = {Int(1)};
    for (unsigned i = 1; i <= g; ++i) pw[i] = poly::mul(pw[i - 1], x2q);
    std::vector<Int> b(g + 1);
    for (unsigned i = 0; i <= g; ++i) {
        unsigned e = 2 * g - i;
        Int coeff = (e < r.size()) ? r[e] : Int(0);
        b[i] = coeff;
        if (coeff == 0) continue;
        Poly term = pw[g - i];
        Poly shifted(term.size() + i, Int(0));
        for (size_t j = 0; j < term.size(); ++j) shifted[j + i] = term[j] * coeff;
        r = poly::sub(r, shifted);
    }
    if (!poly::is_zero(r) || b[0] != 1)
        throw PreconditionError("coefficients violate the functional equation q^g f(x) = x^{2g} f(q/x)");
    RealWeilPolynomial h;
    h.g = g;
    h.q = f.q;
    h.c.assign(b.begin() + 1, b.end());
    return h;
}

WeilPolynomial from_real_weil(const RealWeilPolynomial& h) {
    unsigned g = h.g;
    Poly x2q = {Int(h.q), Int(0), Int(1)};
    Poly f = {Int(0)};
    Poly pw = {Int(1)};
    std::vector<Poly> pws(g + 1);
    pws[0] = pw;
    for (unsigned i = 1; i <= g; ++i) pws[i] = poly::mul(pws[i - 1], x2q);
    for (unsigned i = 0; i <= g; ++i) {
        Int bi = (i == 0) ? Int(1) : h.c[i - 1];
        if (bi == 0) continue;
        Poly term = pws[g - i];
        Poly shifted(term.size() + i, Int(0));
        for (size_t j = 0; j < term.size(); ++j) shifted[j + i] = term[j] * bi;
        f = poly::add(f, shifted);
    }
    return WeilPolynomial::from_full_coefficients(h.q, f);
}

namespace {

// k(u) = prod (u - beta_i^2) for h = prod (y - beta_i): even part of h(y)h(-y)
Poly root_square_poly(const Poly& h) {
    Poly hm(h.size());
    for (size_t i = 0; i < h.size(); ++i) hm[i] = (i % 2 == 0) ? h[i] : Int(-h[i]);
    Poly prod = poly::mul(h, hm);
    int g = poly::degree(h);
    Poly k((prod.size() + 1) / 2);
    for (size_t i = 0; i < prod.size(); i += 2) k[i / 2] = prod[i];
    if (g % 2 != 0)
        for (auto& c : k) c = -c;
    return k;
}

// all real roots of p lie in [lo, hi] (boundary roots allowed)
bool all_roots_real_in(const Poly& p, const Rat& lo, const Rat& hi) {
    Poly s = poly::squarefree_part(p);
    int d = poly::degree(s);
    if (d <= 0) return true;
    // deflate boundary roots
    for (const Rat& e : {lo, hi}) {
        Poly lin = {Int(-e.get_num()), Int(e.get_den())};
        while (poly::degree(s) > 0 && poly::eval(s, e) == 0) s = poly::divide_exact(s, lin);
    }
    d = poly::degree(s);
    if (d <= 0) return true;
    if (poly::count_real_roots(s) != d) return false;
    return poly::count_real_roots_in(s, lo, hi) == d;
}

}  // namespace

bool is_weil(const WeilPolynomial& f) {
    if (f.g == 0) return true;
    RealWeilPolynomial hr = to_real_weil(f);
    Poly h = hr.coefficients();
    // (i) h totally real
    Poly s = poly::squarefree_part(h);
    if (poly::count_real_roots(s) != poly::degree(s)) return false;
    // (ii) all roots of k(u) = Res_y(h(y), u - y^2) inside [0, 4q]
    Poly k = root_square_poly(h);
    return all_roots_real_in(k, Rat(0), Rat(4 * Int(f.q)));
}

std::vector<Int> power_sum_profile(const WeilPolynomial& f) {
    unsigned g = f.g;
    std::vector<Int> e(g + 1), p(g + 1);
    e[0] = 1;
    for (unsigned k = 1; k <= g; ++k) e[k] = f.a[k - 1];
    for (unsigned k = 1; k <= g; ++k) {
        Int sum = 0;
        for (unsigned i = 1; i < k; ++i) {
            Int term = e[i] * p[k - i];
            sum += (i % 2 == 1) ? term : Int(-term);
        }
        Int last = Int(long(k)) * e[k];
        sum += (k % 2 == 1) ? last : Int(-last);
        p[k] = sum;
    }
    return std::vector<Int>(p.begin() + 1, p.end());
}

namespace {

// exact integer ceil(m * q^{k/2})
Int ceil_scaled_root(const Int& m, unsigned long q, unsigned k) {
    if (k % 2 == 0) return m * pow_int(q, k / 2);
    Int v = m * m * pow_int(q, k);
    return ceil_sqrt(v);
}

void check_limits(unsigned g, unsigned long q, const EnumerateOptions& opts) {
    if (g > opts.max_g) throw LimitExceededError("enumeration half-degree g too large", opts.max_g);
    if (q > opts.max_q) throw LimitExceededError("enumeration q too large", long(opts.max_q));
    if (!is_prime_power(q)) throw PreconditionError("q must be a prime power >= 2");
}

// odometer over vectors v with |v_i| <= bound_i, calling fn for each;
// the first coordinate range can be split for threading
template <class Fn>
void iterate_box(const std::vector<Int>& bounds, const Int& first_lo, const Int& first_hi, Fn&& fn) {
    std::vector<Int> v(bounds.size());
    if (bounds.empty()) {
        fn(v);
        return;
    }
    for (Int v0 = first_lo; v0 <= first_hi; ++v0) {
        v[0] = v0;
        size_t i = 1;
        for (size_t j = 1; j < v.size(); ++j) v[j] = -bounds[j];
        if (v.size() == 1) {
            fn(v);
            continue;
        }
        for (;;) {
            fn(v);
            i = v.size() - 1;
            for (;;) {
                if (v[i] < bounds[i]) {
                    ++v[i];
                    break;
                }
                v[i] = -bounds[i];
                if (i == 1) goto next_v0;
                --i;
            }
        }
    next_v0:;
    }
}

// sound rejection before the Sturm machinery: the power sums of 2g roots of
// absolute value sqrt(q) always satisfy s_k^2 <= (2g)^2 q^k
bool inside_power_sum_box(const WeilPolynomial& f) {
    unsigned g = f.g;
    std::vector<Int> e(g + 1), p(g + 1);
    e[0] = 1;
    for (unsigned k = 1; k <= g; ++k) e[k] = f.a[k - 1];
    Int qk = 1;
    for (unsigned k = 1; k <= g; ++k) {
        Int sum = 0;
        for (unsigned i = 1; i < k; ++i) {
            Int term = e[i] * p[k - i];
            sum += (i % 2 == 1) ? term : Int(-term);
        }
        Int last = Int(long(k)) * e[k];
        sum += (k % 2 == 1) ? last : Int(-last);
        p[k] = sum;
        qk *= (long)f.q;
        if (p[k] * p[k] > Int(4 * long(g) * long(g)) * qk) return false;
    }
    return true;
}

EnumerationResult enumerate_generic(unsigned g, unsigned long q, const EnumerateOptions& opts,
                                    const std::vector<Int>& bounds, bool h_space) {
    EnumerationResult res;
    res.count = 0;
    if (g == 0) {
        res.count = 1;
        if (opts.keep_list) res.list.push_back(WeilPolynomial::make(0, q, {}));
        return res;
    }
    unsigned nthreads = std::max(1u, opts.threads);
    Int span = 2 * bounds[0] + 1;
    if (span < long(4 * nthreads)) nthreads = 1;
    auto worker = [&](const Int& lo, const Int& hi, Int& count, std::vector<WeilPolynomial>& list) {
        iterate_box(bounds, lo, hi, [&](const std::vector<Int>& v) {
            WeilPolynomial f;
            if (h_space) {
                RealWeilPolynomial h;
                h.g = g;
                h.q = q;
                h.c = v;
                f = from_real_weil(h);
            } else {
                f = WeilPolynomial::make(g, q, v);
            }
            if (inside_power_sum_box(f) && is_weil(f)) {
                ++count;
                if (opts.keep_list) list.push_back(std::move(f));
            }
        });
    };
    if (nthreads == 1) {
        worker(-bounds[0], bounds[0], res.count, res.list);
    } else {
        std::vector<Int> counts(nthreads, Int(0));
        std::vector<std::vector<WeilPolynomial>> lists(nthreads);
        std::vector<std::thread> pool;
        Int lo = -bounds[0];
        Int chunk = span / long(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) {
            Int hi = (t + 1 == nthreads) ? bounds[0] : Int(lo + chunk - 1);
            pool.emplace_back(worker, lo, hi, std::ref(counts[t]), std::ref(lists[t]));
            lo = hi + 1;
        }
        for (auto& th : pool) th.join();
        for (unsigned t = 0; t < nthreads; ++t) {
            res.count += counts[t];
            for (auto& f : lists[t]) res.list.push_back(std::move(f));
        }
    }
    return res;
}

}  // namespace

EnumerationResult enumerate_weil(unsigned g, unsigned long q, const EnumerateOptions& opts) {
    check_limits(g, q, opts);
    std::vector<Int> bounds(g);
    for (unsigned k = 1; k <= g; ++k) {
        // |c_k| <= C(g,k) (2 sqrt q)^k = C(g,k) 2^k q^{k/2}
        bounds[k - 1] = ceil_scaled_root(binomial(g, k) * pow_int(2ul, k), q, k);
    }
    return enumerate_generic(g, q, opts, bounds, true);
}

EnumerationResult enumerate_weil_coefficient_space(unsigned g, unsigned long q,
                                                   const EnumerateOptions& opts) {
    check_limits(g, q, opts);
    std::vector<Int> bounds(g);
    for (unsigned k = 1; k <= g; ++k) {
        // |a_k| <= C(2g,k) q^{k/2}
        bounds[k - 1] = ceil_scaled_root(binomial(2 * g, k), q, k);
    }
    return enumerate_generic(g, q, opts, bounds, false);
}

CountBounds count_bounds(unsigned g, unsigned long q) {
    if (g < 1) throw PreconditionError("count_bounds needs g >= 1");
    CountBounds cb;
    // (2g)^g q^{g(g+1)/4} = A * q^{r/4} with A integral
    unsigned long N = (unsigned long)g * (g + 1);
    Int A = pow_int(Int(2 * long(g)), g) * pow_int(q, N / 4);
    unsigned r = N % 4;
    mpf_class v(A, 256);
    if (r != 0) {
        mpf_class qr(q, 256);
        mpf_class root;
        mpf_sqrt(root.get_mpf_t(), qr.get_mpf_t());  // q^{1/2}
        if (r == 2) {
            v *= root;
        } else {
            mpf_class root4;
            mpf_sqrt(root4.get_mpf_t(), root.get_mpf_t());  // q^{1/4}
            v *= root4;
            if (r == 3) v *= root;
        }
    }
    cb.power_sum_bound_decimal = mpf_decimal(v);
    cb.power_sum_bound_log2 = double(g) * std::log2(2.0 * g) + double(N) / 4.0 * std::log2(double(q));
    cb.interval_bound = 1;
    for (unsigned k = 1; k <= g; ++k) {
        // floor(2g q^{k/2})
        Int m;
        if (k % 2 == 0) {
            m = Int(2 * long(g)) * pow_int(q, k / 2);
        } else {
            m = isqrt(Int(4 * long(g) * long(g)) * pow_int(q, k));
        }
        cb.interval_bound *= 2 * m + 1;
    }
    return cb;
}

std::string to_json(const std::vector<WeilPolynomial>& list) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < list.size(); ++i) {
        if (i) os << ",";
        os << "\n  {\"g\": " << list[i].g << ", \"q\": " << list[i].q << ", \"a\": [";
        for (size_t j = 0; j < list[i].a.size(); ++j) {
            if (j) os << ", ";
            os << list[i].a[j];
        }
        os << "]}";
    }
    os << "\n]\n";
    return os.str();
}

}  // namespace avc::weil
