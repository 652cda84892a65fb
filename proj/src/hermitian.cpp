#include "avcensus/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "avcensus/isometry_detail.hpp"
#include "avcensus/numfield.hpp"

namespace avc::hermitian {

using quadint::QuadRat;

namespace {

const unsigned long kClassNumberOne[] = {1, 2, 3, 7, 11, 19, 43, 67, 163};

bool is_class_number_one(unsigned long d) {
    for (unsigned long v : kClassNumberOne)
        if (v == d) return true;
    return false;
}

// Hermite constants gamma_m, rounded up a little, m = 2..8 even
double hermite_gamma(unsigned m) {
    switch (m) {
        case 2: return 1.1548;
        case 4: return 1.4143;
        case 6: return 1.6654;
        case 8: return 2.0001;
        default: throw PreconditionError("hermite constant out of range");
    }
}

// squared covering radius of the ring lattice in C
Rat covering_radius_sq(const QuadRing& R) {
    if (R.half) {
        // circumradius of the (0, 1, w) triangle
        long d = long(R.d);
        return Rat(Int((1 + d) * (1 + d)), Int(16 * d));
    }
    return Rat(Int(long(1 + R.d)), Int(4));
}

}  // namespace

void HermitianGram::validate() const {
    if (e.size() != n) throw PreconditionError("Gram shape mismatch");
    for (unsigned i = 0; i < n; ++i) {
        if (e[i].size() != n) throw PreconditionError("Gram shape mismatch");
        if (e[i][i].y != 0) throw PreconditionError("diagonal entries must be rational integers");
        for (unsigned j = 0; j < n; ++j)
            if (!(e[j][i] == quadint::conj(ring, e[i][j])))
                throw PreconditionError("Gram must be conjugate-symmetric");
    }
    for (unsigned j = 1; j <= n; ++j)
        if (leading_minor(j) <= 0) throw PreconditionError("Gram is not positive definite");
    if (det() != 1) throw PreconditionError("Gram is not unimodular");
}

Rat HermitianGram::leading_minor(unsigned jdim) const {
    // Gaussian elimination over Q(sqrt(-d)); the result must be real
    std::vector<std::vector<QuadRat>> a(jdim, std::vector<QuadRat>(jdim));
    for (unsigned i = 0; i < jdim; ++i)
        for (unsigned j = 0; j < jdim; ++j) a[i][j] = quadint::to_quadrat(ring, e[i][j]);
    Rat det(1);
    for (unsigned k = 0; k < jdim; ++k) {
        // hermitian PD pivots are real and nonzero along the way
        QuadRat piv = a[k][k];
        if (piv.is_zero()) return Rat(0);
        if (piv.im != 0) throw InternalAssertionError("hermitian pivot not real");
        det *= piv.re;
        for (unsigned i = k + 1; i < jdim; ++i) {
            QuadRat f = quadint::qr_div(ring, a[i][k], piv);
            for (unsigned j = k; j < jdim; ++j)
                a[i][j] = quadint::qr_sub(a[i][j], quadint::qr_mul(ring, f, a[k][j]));
        }
    }
    det.canonicalize();
    return det;
}

Rat HermitianGram::det() const { return leading_minor(n); }

unsigned HermitianGram::norm_gcd() const {
    Int g = 0;
    auto acc = [&](const Int& v) { mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Int(abs(v)).get_mpz_t()); };
    QuadInt w{Int(0), Int(1)};
    for (unsigned i = 0; i < n; ++i) acc(e[i][i].x);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            acc(quadint::trace(ring, e[i][j]));
            acc(quadint::trace(ring, quadint::mul(ring, w, e[i][j])));
            acc(quadint::trace(ring, quadint::mul(ring, quadint::conj(ring, w), e[i][j])));
        }
    if (g == 0) throw InternalAssertionError("zero Gram");
    return (unsigned)mpz_get_ui(g.get_mpz_t());
}

std::string HermitianGram::key() const {
    std::ostringstream os;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) os << e[i][j].x << "," << e[i][j].y << ";";
    return os.str();
}

// ---- Z-realization of a hermitian lattice for short-vector work ----

namespace {

struct HermForm {
    using Value = QuadInt;

    const HermitianGram* G;
    std::unique_ptr<isometry_detail::ShortVectors> sv;

    explicit HermForm(const HermitianGram& g) : G(&g) {
        // coordinates (x_1, y_1, ..., x_n, y_n) for v = sum (x_i + y_i w) e_i;
        // S is the rational Gram of Q(coords) = h(v, v)
        unsigned m = 2 * g.n;
        std::vector<std::vector<Rat>> S(m, std::vector<Rat>(m, Rat(0)));
        auto basis_elt = [&](unsigned k) {
            std::vector<QuadInt> v(g.n, QuadInt{Int(0), Int(0)});
            v[k / 2] = (k % 2 == 0) ? QuadInt{Int(1), Int(0)} : QuadInt{Int(0), Int(1)};
            return v;
        };
        for (unsigned k = 0; k < m; ++k)
            for (unsigned l = 0; l < m; ++l) {
                QuadInt h = pair_vectors(basis_elt(k), basis_elt(l));
                // bilinear part: (h(u,v) + h(v,u))/2 = Tr(h(u,v))/2
                S[k][l] = Rat(quadint::trace(g.ring, h)) / 2;
            }
        sv = std::make_unique<isometry_detail::ShortVectors>(S);
    }

    std::vector<QuadInt> coords_to_vec(const std::vector<int>& x) const {
        std::vector<QuadInt> v(G->n);
        for (unsigned i = 0; i < G->n; ++i) v[i] = QuadInt{Int(x[2 * i]), Int(x[2 * i + 1])};
        return v;
    }

    QuadInt pair_vectors(const std::vector<QuadInt>& u, const std::vector<QuadInt>& v) const {
        // h(u, v) = sum conj(u_i) G_ij v_j
        QuadInt acc{Int(0), Int(0)};
        for (unsigned i = 0; i < G->n; ++i) {
            if (u[i].is_zero()) continue;
            QuadInt cu = quadint::conj(G->ring, u[i]);
            for (unsigned j = 0; j < G->n; ++j) {
                if (v[j].is_zero()) continue;
                acc = quadint::add(acc, quadint::mul(G->ring, quadint::mul(G->ring, cu, G->e[i][j]), v[j]));
            }
        }
        return acc;
    }

    Value pair(const std::vector<int>& a, const std::vector<int>& b) const {
        return pair_vectors(coords_to_vec(a), coords_to_vec(b));
    }

    isometry_detail::ShortVectors& shorts() { return *sv; }
};

std::vector<std::vector<QuadInt>> gram_pairs(const HermitianGram& g) {
    return g.e;
}

std::vector<Int> gram_diag(const HermitianGram& g) {
    std::vector<Int> d(g.n);
    for (unsigned i = 0; i < g.n; ++i) d[i] = g.e[i][i].x;
    return d;
}

std::vector<std::vector<int>> standard_coords(unsigned n) {
    std::vector<std::vector<int>> b(n, std::vector<int>(2 * n, 0));
    for (unsigned i = 0; i < n; ++i) b[i][2 * i] = 1;
    return b;
}

}  // namespace

Int automorphism_count(const HermitianGram& G) {
    HermForm form(G);
    isometry_detail::IsometryEngine<HermForm> eng(form, gram_diag(G), gram_pairs(G));
    return eng.count_automorphisms(standard_coords(G.n));
}

bool isometric(const HermitianGram& A, const HermitianGram& B) {
    if (A.n != B.n || A.ring.d != B.ring.d) return false;
    HermForm form(B);
    isometry_detail::IsometryEngine<HermForm> eng(form, gram_diag(A), gram_pairs(A));
    return eng.exists();
}

// ---- exhaustive class enumeration ----

namespace {

// all ring elements with norm <= bound, deterministic order
std::vector<QuadInt> elements_with_norm_up_to(const QuadRing& R, const Int& bound) {
    std::vector<QuadInt> out;
    if (bound < 0) return out;
    // N(x + y w): x^2 + d y^2, or x^2 + xy + y^2 (1+d)/4 = (x + y/2)^2 + d y^2 / 4
    double b = bound.get_d();
    long ymax = R.half ? long(std::floor(2 * std::sqrt(b / double(R.d)))) + 1
                       : long(std::floor(std::sqrt(b / double(R.d)))) + 1;
    for (long y = -ymax; y <= ymax; ++y) {
        for (long x = -long(std::floor(std::sqrt(b))) - ymax - 1;
             x <= long(std::floor(std::sqrt(b))) + ymax + 1; ++x) {
            QuadInt v{Int(x), Int(y)};
            if (quadint::norm(R, v) <= bound) out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadInt& a, const QuadInt& b2) {
        if (a.x != b2.x) return a.x < b2.x;
        return a.y < b2.y;
    });
    return out;
}

}  // namespace

std::vector<HermitianGram> enumerate_classes(unsigned long d, unsigned n, const EnumOptions& opts) {
    if (!is_class_number_one(d))
        throw PreconditionError("field must be one of the nine class-number-1 fields");
    if (n < 1 || n > opts.max_rank)
        throw LimitExceededError("hermitian rank out of range", long(opts.max_rank));
    QuadRing R = QuadRing::make(d);
    Rat rho2 = covering_radius_sq(R);
    double sqrt_absdisc = std::sqrt(double(R.abs_disc()));
    long cap1 = long(opts.bound_scale) *
                (long)std::ceil(hermite_gamma(2 * n) * sqrt_absdisc / 2.0);
    cap1 = std::max(cap1, 1L);

    std::vector<HermitianGram> reps;
    HermitianGram cur;
    cur.ring = R;
    cur.n = n;
    cur.e.assign(n, std::vector<QuadInt>(n, QuadInt{Int(0), Int(0)}));

    std::function<void(unsigned)> rec = [&](unsigned j) {
        long lo = (j == 0) ? 1 : long(cur.e[j - 1][j - 1].x.get_si());
        long hi;
        if (j == 0) {
            hi = cap1;
        } else {
            // scaled reduction bound (1 + d_{j-1}^2 rho^2) / d_{j-1}
            Rat prev(cur.e[j - 1][j - 1].x);
            Rat bound = (Rat(1) + prev * prev * rho2) / prev * long(opts.bound_scale);
            hi = long(std::floor(bound.get_d()));
        }
        for (long dj = lo; dj <= hi; ++dj) {
            cur.e[j][j] = QuadInt{Int(dj), Int(0)};
            // off-diagonal column entries, |beta_ij|^2 <= d_i d_j
            std::function<void(unsigned)> fill = [&](unsigned i) {
                if (i == j) {
                    Rat mj = cur.leading_minor(j + 1);
                    if (mj <= 0) return;
                    // Fischer: remaining diagonals are >= dj, det stays <= minor * prod(later d)
                    if (j + 1 == n) {
                        if (mj == 1) {
                            HermitianGram g = cur;
                            // fill conjugates below the diagonal
                            for (unsigned a = 0; a < n; ++a)
                                for (unsigned b = a + 1; b < n; ++b)
                                    g.e[b][a] = quadint::conj(R, g.e[a][b]);
                            bool fresh = true;
                            for (const auto& r : reps)
                                if (isometric(g, r)) {
                                    fresh = false;
                                    break;
                                }
                            if (fresh) reps.push_back(std::move(g));
                        }
                        return;
                    }
                    rec(j + 1);
                    return;
                }
                Int di = cur.e[i][i].x;
                for (const auto& beta : elements_with_norm_up_to(R, di * dj)) {
                    cur.e[i][j] = beta;
                    cur.e[j][i] = quadint::conj(R, beta);
                    fill(i + 1);
                }
                cur.e[i][j] = QuadInt{Int(0), Int(0)};
                cur.e[j][i] = QuadInt{Int(0), Int(0)};
            };
            fill(0);
        }
    };
    rec(0);
    std::sort(reps.begin(), reps.end(),
              [](const HermitianGram& a, const HermitianGram& b) { return a.key() < b.key(); });
    return reps;
}

Rat mass_brute(unsigned long d, unsigned n, const EnumOptions& opts) {
    Rat total(0);
    for (const auto& g : enumerate_classes(d, n, opts)) total += Rat(1) / Rat(automorphism_count(g));
    total.canonicalize();
    return total;
}

// ---- mass formula ----

Rat orthogonal_density(unsigned n, unsigned long q, int type) {
    if (n == 0) throw PreconditionError("orthogonal rank must be positive");
    Int qi((long)q);
    if (n % 2 == 1) {
        unsigned m = (n - 1) / 2;
        // #O_{2m+1}(F_q) = 2 q^{m^2} prod (q^{2i} - 1), dim = m(2m+1)
        Int num = 2 * pow_int(qi, (unsigned long)m * m);
        for (unsigned i = 1; i <= m; ++i) num *= pow_int(qi, 2 * i) - 1;
        Rat r(num, pow_int(qi, (unsigned long)m * (2 * m + 1)));
        r.canonicalize();
        return r;
    }
    unsigned m = n / 2;
    // #O^{+-}_{2m}(F_q) = 2 q^{m(m-1)} (q^m -+ 1) prod_{i<m} (q^{2i} - 1), dim = m(2m-1)
    Int num = 2 * pow_int(qi, (unsigned long)m * (m - 1));
    num *= (type >= 0) ? Int(pow_int(qi, m) - 1) : Int(pow_int(qi, m) + 1);
    for (unsigned i = 1; i < m; ++i) num *= pow_int(qi, 2 * i) - 1;
    Rat r(num, pow_int(qi, (unsigned long)m * (2 * m - 1)));
    r.canonicalize();
    return r;
}

namespace {

// the two-group rule at an odd ramified prime: the residual quadratic space of
// the standard unimodular lattice has discriminant 1, so for even rank the
// type is +1 exactly when (-1)^{n/2} is a square mod q
Rat odd_ramified_density(unsigned n, unsigned long q) {
    if (n % 2 == 1) return orthogonal_density(n, q, 0);
    int type;
    if ((n / 2) % 2 == 0) {
        type = +1;
    } else {
        type = (kronecker(Int(-1), Int((long)q)) == 1) ? +1 : -1;
    }
    return orthogonal_density(n, q, type);
}

struct SymbolicValue {
    Rat rational{1};
    int pi_pow = 0;
    int sqrt_pow = 0;  // power of sqrt(|D|)

    void mul(const Rat& r, int pi, int sq) {
        rational *= r;
        pi_pow += pi;
        sqrt_pow += sq;
    }
};

}  // namespace

const std::vector<CalibrationRow>& builtin_calibration() {
    // Dyadic ramified densities solved against enumeration (the two candidate
    // orthogonal densities provably fail at |D| = 4, rank 2); odd-disc rows
    // confirm the orthogonal rule.  Regenerate with `avcensus hermitian
    // calibrate`.
    static const std::vector<CalibrationRow> rows = [] {
        std::vector<CalibrationRow> t;
        auto add = [&](unsigned long D, unsigned r, unsigned ng, long num, long den,
                       const char* src) {
            CalibrationRow row;
            row.abs_disc = D;
            row.rank = r;
            row.norm_gcd = ng;
            row.beta = Rat(num, den);
            row.source = src;
            t.push_back(row);
        };
        add(4, 1, 1, 2, 1, "calibrated");
        add(4, 2, 1, 2, 1, "calibrated");
        add(8, 1, 1, 2, 1, "calibrated");
        add(8, 2, 1, 2, 1, "calibrated");
        add(8, 2, 2, 12, 1, "calibrated");
        return t;
    }();
    return rows;
}

namespace {

std::optional<CalibrationRow> lookup_density(unsigned long abs_disc, unsigned rank,
                                             unsigned norm_gcd) {
    for (const auto& r : builtin_calibration())
        if (r.abs_disc == abs_disc && r.rank == rank && r.norm_gcd == norm_gcd) return r;
    return std::nullopt;
}

// which norm-ideal genera exist for (d, n): dyadic fields can carry an even
// genus; odd-disc fields cannot (the norm ideal is forced at odd ramified v)
std::vector<unsigned> genera_for(unsigned long abs_disc, unsigned n) {
    std::vector<unsigned> out = {1};
    if (abs_disc == 8 && n == 2) out.push_back(2);
    (void)n;
    return out;
}

// 2 c(M) * prod_k Lambda(k) with the pi and sqrt(|D|) powers resolved; the
// genus mass is this divided by the ramified local density
Rat density_free_mass(const QuadRing& R, unsigned n, GenusMass* audit) {
    unsigned long f = R.abs_disc();
    unsigned long q_ram = (f % 2 == 0) ? 2 : f;  // the single ramified prime
    SymbolicValue acc;
    acc.mul(Rat(2), 0, 0);  // Tamagawa number of the unitary group
    // c(M) = prod_{t=1}^n (t-1)!/(2 pi)^t * f^{n(n+1)/4}
    Rat c_rat(1);
    for (unsigned t = 1; t <= n; ++t) {
        Rat term(factorial(t - 1), pow_int(2ul, t));
        term.canonicalize();
        c_rat *= term;
    }
    // keep the sqrt(f) bookkeeping aligned with dirichlet_L_exact, which folds
    // the root into the rational when f is a perfect square
    Int froot;
    int c_sqrt_pow = int(n * (n + 1) / 2);
    if (is_perfect_square(Int((long)f), &froot)) {
        c_rat *= Rat(pow_int(froot, (unsigned long)c_sqrt_pow));
        c_sqrt_pow = 0;
    }
    acc.mul(c_rat, -int(n * (n + 1) / 2), c_sqrt_pow);
    if (audit) {
        audit->c_rational = c_rat;
        audit->c_pi_pow = -int(n * (n + 1) / 2);
        audit->c_sqrt_pow = c_sqrt_pow;
    }
    // unramified product: Lambda(k) = zeta(k) with the Euler factor at the
    // ramified prime removed for even k, L(k, chi_D) for odd k
    for (unsigned k = 1; k <= n; ++k) {
        LambdaFactor lf;
        lf.k = k;
        if (k % 2 == 0) {
            auto z = numfield::dirichlet_L_exact(numfield::QuadCharacter{1}, k);
            lf.rational = z.rational * (Rat(1) - Rat(1, pow_int(q_ram, k)));
            lf.pi_pow = k;
            lf.sqrt_pow = 0;
        } else {
            auto L = numfield::dirichlet_L_exact(numfield::QuadCharacter{R.D}, k);
            lf.rational = L.rational;
            lf.pi_pow = k;
            lf.sqrt_pow = L.sqrt_pow;  // 0 when |D| is a perfect square (folded)
        }
        acc.mul(lf.rational, int(lf.pi_pow), lf.sqrt_pow);
        if (audit) audit->lambda.push_back(lf);
    }
    if (acc.pi_pow != 0)
        throw InternalAssertionError("pi powers fail to cancel in the mass formula");
    if (acc.sqrt_pow % 2 != 0)
        throw InternalAssertionError("sqrt(|D|) powers fail to pair in the mass formula");
    Rat mass = acc.rational;
    int half = acc.sqrt_pow / 2;
    for (int t = 0; t < half; ++t) mass *= Rat(Int((long)f));
    for (int t = 0; t > half; --t) mass /= Rat(Int((long)f));
    mass.canonicalize();
    return mass;
}

GenusMass genus_mass(const QuadRing& R, unsigned n, unsigned norm_gcd) {
    unsigned long f = R.abs_disc();
    unsigned long q_ram = (f % 2 == 0) ? 2 : f;
    GenusMass gm;
    gm.norm_gcd = norm_gcd;
    Rat base = density_free_mass(R, n, &gm);
    auto row = lookup_density(f, n, norm_gcd);
    if (row) {
        gm.ramified_beta = row->beta;
        gm.beta_source = row->source;
    } else if (f % 2 == 1) {
        gm.ramified_beta = odd_ramified_density(n, q_ram);
        gm.beta_source = "orthogonal";
    } else {
        throw PreconditionError(
            "no calibrated dyadic density for this rank; run `hermitian calibrate`");
    }
    gm.mass = base / gm.ramified_beta;
    gm.mass.canonicalize();
    return gm;
}

}  // namespace

MassAudit mass_formula(unsigned long d, unsigned n) {
    if (!is_class_number_one(d))
        throw PreconditionError("field must be one of the nine class-number-1 fields");
    if (n < 1) throw PreconditionError("rank must be positive");
    QuadRing R = QuadRing::make(d);
    MassAudit out;
    out.total = Rat(0);
    for (unsigned ng : genera_for(R.abs_disc(), n)) {
        GenusMass gm = genus_mass(R, n, ng);
        out.total += gm.mass;
        out.genera.push_back(std::move(gm));
    }
    out.total.canonicalize();
    out.pi_cancelled = true;  // genus_mass throws otherwise
    return out;
}

std::vector<CalibrationRow> calibrate(unsigned max_rank) {
    std::vector<CalibrationRow> rows;
    for (unsigned long d : kClassNumberOne) {
        QuadRing R = QuadRing::make(d);
        unsigned long f = R.abs_disc();
        unsigned long q_ram = (f % 2 == 0) ? 2 : f;
        for (unsigned n = 1; n <= max_rank; ++n) {
            auto classes = enumerate_classes(d, n);
            std::map<unsigned, Rat> genus_brute;
            for (const auto& g : classes) genus_brute[g.norm_gcd()] += Rat(1) / Rat(automorphism_count(g));
            Rat base = density_free_mass(R, n, nullptr);
            for (auto& [ng, brute] : genus_brute) {
                brute.canonicalize();
                // solve  brute = base / beta  for beta
                Rat beta = base / brute;
                beta.canonicalize();
                CalibrationRow row;
                row.abs_disc = f;
                row.rank = n;
                row.norm_gcd = ng;
                row.beta = beta;
                row.source = (f % 2 == 1 && beta == odd_ramified_density(n, q_ram))
                                 ? "orthogonal"
                                 : "calibrated";
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::string calibration_to_json(const std::vector<CalibrationRow>& rows) {
    std::ostringstream os;
    os << "{\n  \"version\": 1,\n  \"entries\": [";
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) os << ",";
        os << "\n    {\"abs_disc\": " << rows[i].abs_disc << ", \"rank\": " << rows[i].rank
           << ", \"norm_gcd\": " << rows[i].norm_gcd << ", \"beta\": {\"num\": \""
           << rows[i].beta.get_num() << "\", \"den\": \"" << rows[i].beta.get_den()
           << "\"}, \"source\": \"" << rows[i].source << "\"}";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

MassEstimate log_mass_estimate(unsigned K_degree, unsigned n, double D_L_norm) {
    if (K_degree < 1 || n < 1 || D_L_norm < 1) throw PreconditionError("inputs must be positive");
    MassEstimate est;
    est.leading = double(K_degree) * double(n) * double(n) * std::log(double(n));
    double twopi = 2.0 * std::acos(-1.0);
    double s = 0.0;
    for (unsigned t = 1; t <= n; ++t) s += std::lgamma(double(t)) - double(t) * std::log(twopi);
    est.exact_part = s + double(n) * (n + 1) / 4.0 * std::log(D_L_norm);
    return est;
}

double orbit_count_estimate(const std::vector<unsigned>& degrees,
                            const std::vector<unsigned>& ranks) {
    if (degrees.size() != ranks.size()) throw PreconditionError("mismatched list lengths");
    double s = 0.0;
    for (size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 1 || ranks[i] < 1) throw PreconditionError("entries must be positive");
        s += double(degrees[i]) * double(ranks[i]) * double(ranks[i]) * std::log(double(ranks[i]));
    }
    return s;
}

std::string to_json(const std::vector<HermitianGram>& classes) {
    std::ostringstream os;
    os << "[";
    for (size_t c = 0; c < classes.size(); ++c) {
        if (c) os << ",";
        os << "\n  {\"rank\": " << classes[c].n << ", \"gram\": [";
        for (unsigned i = 0; i < classes[c].n; ++i) {
            if (i) os << ", ";
            os << "[";
            for (unsigned j = 0; j < classes[c].n; ++j) {
                if (j) os << ", ";
                os << quadint::to_string(classes[c].e[i][j]);
            }
            os << "]";
        }
        os << "], \"norm_gcd\": " << classes[c].norm_gcd() << "}";
    }
    os << "\n]\n";
    return os.str();
}

}  // namespace avc::hermitian
