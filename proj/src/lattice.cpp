#include "avcensus/lattice.hpp"

#include <algorithm>
#include <set>

namespace avc::lattice {

// ---- partitions ----

namespace {

void partition_rec(unsigned remaining, unsigned max_part, std::vector<unsigned>& acc,
                   const std::function<void(const std::vector<unsigned>&)>& fn) {
    if (remaining == 0) {
        fn(acc);
        return;
    }
    for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
        acc.push_back(part);
        partition_rec(remaining - part, part, acc, fn);
        acc.pop_back();
    }
}

}  // namespace

void for_each_partition(unsigned j, const std::function<void(const std::vector<unsigned>&)>& fn) {
    std::vector<unsigned> acc;
    partition_rec(j, j == 0 ? 1 : j, acc, fn);
}

Int partition_count(unsigned j) {
    static std::vector<Int> cache = {Int(1)};
    while (cache.size() <= j) {
        unsigned n = unsigned(cache.size());
        Int s = 0;
        for (unsigned k = 1;; ++k) {
            unsigned long g1 = (unsigned long)k * (3 * k - 1) / 2;
            unsigned long g2 = (unsigned long)k * (3 * k + 1) / 2;
            if (g1 > n && g2 > n) break;
            Int term = 0;
            if (g1 <= n) term += cache[n - g1];
            if (g2 <= n) term += cache[n - g2];
            s += (k % 2 == 1) ? term : Int(-term);
        }
        cache.push_back(s);
    }
    return cache[j];
}

bool partition_bound_check(unsigned j) {
    if (j > 64) throw LimitExceededError("partition bound check j too large", 64);
    return partition_count(j) <= pow_int(2ul, j);
}

Int hilb_count(unsigned long ell, unsigned j, unsigned max_j) {
    if (j > max_j) throw LimitExceededError("hilb_count j too large", long(max_j));
    Int total = 0;
    for_each_partition(j, [&](const std::vector<unsigned>& lambda) {
        total += pow_int(ell, j - (unsigned long)lambda.size());
    });
    return total;
}

// ---- HNF machinery over l-power moduli ----
//
// Sublattices M of Z^n with l^k Z^n inside M are represented by an upper
// triangular basis-column matrix H: H[i][i] = l^{d_i}, 0 <= H[i][j] < H[i][i]
// for j > i.  Membership is back-substitution with exact divisibility checks.

namespace {

using I64 = std::int64_t;
using Mat = std::vector<std::vector<I64>>;

I64 ipow(I64 b, unsigned e) {
    I64 r = 1;
    while (e--) r *= b;
    return r;
}

// v in colspan_{Z_l}(H)?  v entries are exact integer lifts.
bool hnf_member(const Mat& H, std::vector<Int> v) {
    int n = int(H.size());
    for (int j = n - 1; j >= 0; --j) {
        Int piv(H[j][j]);
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v[j].get_mpz_t(), piv.get_mpz_t());
        if (r != 0) return false;
        for (int i = 0; i <= j; ++i) v[i] -= q * Int(H[i][j]);
    }
    return true;
}

// iterate all HNF matrices with the given diagonal exponents
template <class Fn>
void iterate_hnf(unsigned long ell, const std::vector<unsigned>& diag, Fn&& fn) {
    int n = int(diag.size());
    Mat H(n, std::vector<I64>(n, 0));
    for (int i = 0; i < n; ++i) H[i][i] = ipow(I64(ell), diag[i]);
    // positions (i, j), i < j, cycling each entry through [0, l^{d_i})
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (diag[i] > 0) pos.emplace_back(i, j);
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == pos.size()) {
            fn(H);
            return;
        }
        auto [i, j] = pos[idx];
        I64 lim = H[i][i];
        for (I64 v = 0; v < lim; ++v) {
            H[i][j] = v;
            rec(idx + 1);
        }
        H[i][j] = 0;
    };
    rec(0);
}

// compositions of c into n nonnegative parts with per-part caps
template <class Fn>
void iterate_compositions(unsigned c, unsigned n, const std::vector<unsigned>& cap, Fn&& fn) {
    std::vector<unsigned> d(n, 0);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned idx, unsigned left) {
        if (idx == n) {
            if (left == 0) fn(d);
            return;
        }
        unsigned hi = std::min(left, cap.empty() ? left : cap[idx]);
        for (unsigned v = 0; v <= hi; ++v) {
            d[idx] = v;
            rec(idx + 1, left - v);
        }
        d[idx] = 0;
    };
    rec(0, c);
}

}  // namespace

Int hilb_brute_force(unsigned long ell, unsigned j) {
    if (j == 0) return 1;
    if (j > 4) throw LimitExceededError("hilb_brute_force j too large", 4);
    if (ell > 3) throw LimitExceededError("hilb_brute_force ell too large", 3);
    // A = Z_l[[x]] / m^j has Z-module shape  prod_{b=0}^{j-1} Z/l^{j-b};
    // colength-j ideals of the power series ring = shift-stable subgroups of
    // index l^j.  Lattice picture: D Z^j inside M inside Z^j, D = diag(l^{e_b}).
    unsigned n = j;
    std::vector<unsigned> e(n);
    for (unsigned b = 0; b < n; ++b) e[b] = j - b;
    Int count = 0;
    std::vector<unsigned> caps(e.begin(), e.end());
    iterate_compositions(j, n, caps, [&](const std::vector<unsigned>& d) {
        iterate_hnf(ell, d, [&](const Mat& H) {
            // containment of D Z^j
            for (unsigned b = 0; b < n; ++b) {
                std::vector<Int> v(n, Int(0));
                v[b] = pow_int(ell, e[b]);
                if (!hnf_member(H, v)) return;
            }
            // stability under the shift x: e_b -> e_{b+1}, e_{n-1} -> 0
            for (unsigned col = 0; col < n; ++col) {
                std::vector<Int> v(n, Int(0));
                for (unsigned i = 0; i <= col; ++i)
                    if (i + 1 < n) v[i + 1] = Int((long)H[i][col]);
                if (!hnf_member(H, v)) return;
            }
            ++count;
        });
    });
    return count;
}

// ---- stable sublattices ----

void TruncatedMatrix::validate() const {
    if (k < 1) throw PreconditionError("precision k must be >= 1");
    if (!is_prime_u64(ell)) throw PreconditionError("ell must be prime");
    double bits = double(k) * std::log2(double(ell));
    if (bits > 40) throw LimitExceededError("ell^k too large", 40);
    if (entries.size() != n) throw PreconditionError("matrix shape mismatch");
    I64 m = modulus();
    for (const auto& row : entries) {
        if (row.size() != n) throw PreconditionError("matrix shape mismatch");
        for (I64 x : row)
            if (x < 0 || x >= m) throw PreconditionError("entries must be reduced mod ell^k");
    }
}

std::int64_t TruncatedMatrix::modulus() const { return ipow(I64(ell), k); }

std::map<unsigned, Int> count_stable_sublattices(const TruncatedMatrix& gamma,
                                                 unsigned max_colength, unsigned max_cells) {
    gamma.validate();
    if (max_colength >= gamma.k)
        throw PrecisionInsufficientError(
            "stability at colength c needs precision k > c; raise k");
    if (gamma.n * max_colength > max_cells)
        throw LimitExceededError("n * max_colength too large", long(max_cells));
    std::map<unsigned, Int> out;
    unsigned n = gamma.n;
    for (unsigned c = 0; c <= max_colength; ++c) {
        Int count = 0;
        iterate_compositions(c, n, {}, [&](const std::vector<unsigned>& d) {
            iterate_hnf(gamma.ell, d, [&](const Mat& H) {
                for (unsigned col = 0; col < n; ++col) {
                    std::vector<Int> v(n, Int(0));
                    for (unsigned i = 0; i < n; ++i) {
                        Int s = 0;
                        for (unsigned t = 0; t <= col; ++t)
                            s += Int((long)gamma.entries[i][t]) * Int((long)H[t][col]);
                        v[i] = s;
                    }
                    if (!hnf_member(H, v)) return;
                }
                ++count;
            });
        });
        out[c] = count;
    }
    return out;
}

// ---- isotypic gluing ----

namespace {

// companion matrix of a monic integer polynomial, acting on column vectors
std::vector<std::vector<Int>> companion(const poly::Poly& f) {
    int d = poly::degree(f);
    std::vector<std::vector<Int>> C(d, std::vector<Int>(d, Int(0)));
    for (int i = 0; i + 1 < d; ++i) C[i + 1][i] = 1;
    for (int i = 0; i < d; ++i) C[i][d - 1] = -f[i];
    return C;
}

}  // namespace

GlueResult isotypic_glue_count(const poly::Poly& f1, const poly::Poly& f2, unsigned long ell,
                               unsigned precision) {
    int d1 = poly::degree(f1), d2 = poly::degree(f2);
    if (d1 < 1 || d2 < 1) throw PreconditionError("factors must be nonconstant");
    if (f1[d1] != 1 || f2[d2] != 1) throw PreconditionError("factors must be monic");
    if (d1 + d2 > 4) throw LimitExceededError("deg f1 + deg f2 too large", 4);
    if (!is_prime_u64(ell)) throw PreconditionError("ell must be prime");
    Int res = poly::resultant(f1, f2);
    if (res == 0) throw PreconditionError("factors must be coprime over Q");
    unsigned long v = valuation(res, Int((long)ell));
    if (v + 2 > precision)
        throw PrecisionInsufficientError("need precision >= val_ell(Res(f1,f2)) + 2");

    GlueResult out;
    out.delta_unordered = v;
    out.delta_ordered = 2 * v;
    out.formula_count = pow_int(ell, v);

    // gamma-stable lattices M with M /\ V_i equal to the standard lattice M_i
    // sit between M_1 (+) M_2 and l^{-v} of it.  Enumerate subgroups of
    // G = (Z/l^v)^{d1+d2} by HNF, as element sets, and filter.
    unsigned D = unsigned(d1 + d2);
    if (v == 0) {
        out.brute_count = 1;  // unit resultant forces the direct sum
        return out;
    }
    if (double(v) * D * std::log2(double(ell)) > 24)
        throw LimitExceededError("glue state space ell^(v*D) too large", 24);
    I64 lv = ipow(I64(ell), unsigned(v));
    auto C1 = companion(f1);
    auto C2 = companion(f2);
    std::vector<std::vector<I64>> gam(D, std::vector<I64>(D, 0));
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j)
            gam[i][j] = I64(mpz_fdiv_ui(C1[i][j].get_mpz_t(), (unsigned long)lv));
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j)
            gam[d1 + i][d1 + j] = I64(mpz_fdiv_ui(C2[i][j].get_mpz_t(), (unsigned long)lv));

    auto encode = [&](const std::vector<I64>& e) {
        I64 key = 0;
        for (unsigned i = 0; i < D; ++i) key = key * lv + e[i];
        return key;
    };

    Int count = 0;
    std::vector<unsigned> caps(D, unsigned(v));
    for (unsigned c = 0; c <= unsigned(v) * D; ++c) {
        iterate_compositions(c, D, caps, [&](const std::vector<unsigned>& d) {
            iterate_hnf(ell, d, [&](const Mat& H) {
                // containment of l^v Z^D
                for (unsigned b = 0; b < D; ++b) {
                    std::vector<Int> u(D, Int(0));
                    u[b] = Int((long)lv);
                    if (!hnf_member(H, u)) return;
                }
                // element set of M / l^v Z^D by closure under generator addition
                std::set<I64> elems;
                std::vector<std::vector<I64>> gens;
                for (unsigned col = 0; col < D; ++col) {
                    std::vector<I64> gvec(D);
                    for (unsigned i = 0; i < D; ++i) gvec[i] = (i <= col ? H[i][col] % lv : 0);
                    gens.push_back(gvec);
                }
                std::vector<std::vector<I64>> frontier = {std::vector<I64>(D, 0)};
                elems.insert(0);
                while (!frontier.empty()) {
                    auto cur = frontier.back();
                    frontier.pop_back();
                    for (const auto& gvec : gens) {
                        std::vector<I64> nxt(D);
                        for (unsigned i = 0; i < D; ++i) nxt[i] = (cur[i] + gvec[i]) % lv;
                        if (elems.insert(encode(nxt)).second) frontier.push_back(nxt);
                    }
                }
                // trivial intersections with both isotypic blocks
                for (I64 key : elems) {
                    std::vector<I64> e(D);
                    I64 kk = key;
                    for (int i = int(D) - 1; i >= 0; --i) {
                        e[i] = kk % lv;
                        kk /= lv;
                    }
                    bool in1 = true, in2 = true, zero = true;
                    for (int i = 0; i < d1; ++i)
                        if (e[i] != 0) in2 = false;
                    for (int i = d1; i < int(D); ++i)
                        if (e[i] != 0) in1 = false;
                    for (unsigned i = 0; i < D; ++i)
                        if (e[i] != 0) zero = false;
                    if (!zero && (in1 || in2)) return;
                }
                // gamma-stability on generators
                for (const auto& gvec : gens) {
                    std::vector<I64> img(D, 0);
                    for (unsigned i = 0; i < D; ++i) {
                        I64 s = 0;
                        for (unsigned t = 0; t < D; ++t) s = (s + gam[i][t] * gvec[t]) % lv;
                        img[i] = ((s % lv) + lv) % lv;
                    }
                    if (!elems.count(encode(img))) return;
                }
                ++count;
            });
        });
    }
    out.brute_count = count;
    if (out.brute_count != out.formula_count)
        throw InternalAssertionError("isotypic glue count differs from ell^delta");
    return out;
}

// ---- valuations and bounds ----

ValuationResult resultant_valuation(const poly::Poly& f, const poly::Poly& g, unsigned long ell) {
    if (poly::is_zero(f) || poly::is_zero(g)) throw PreconditionError("polynomials must be nonzero");
    Int r = poly::resultant(f, g);
    if (r == 0) return {true, 0};
    return {false, valuation(r, Int((long)ell))};
}

ValuationResult discriminant_valuation(const poly::Poly& f, unsigned long ell) {
    if (poly::is_zero(f)) throw PreconditionError("polynomial must be nonzero");
    Int d = poly::discriminant(f);
    if (d == 0) return {true, 0};
    return {false, valuation(d, Int((long)ell))};
}

Int stable_orbit_bound(unsigned n, unsigned long delta, unsigned long ell) {
    if (n < 1) throw PreconditionError("n must be positive");
    return pow_int(ell, 4ul * n * delta);
}

LogBound global_orbit_bound(unsigned g, unsigned long p) {
    if (g < 1 || p < 2) throw PreconditionError("inputs must be positive");
    // exponent 4 * C(2g, 2)
    double e = 4.0 * double(g) * double(2 * g - 1);  // C(2g,2) = g(2g-1)
    LogBound lb;
    lb.log2_value = e * (1.0 + 0.5 * std::log2(double(p)));
    lb.ln_value = lb.log2_value * std::log(2.0);
    lb.decimal = std::exp2(lb.log2_value);
    return lb;
}

}  // namespace avc::lattice
