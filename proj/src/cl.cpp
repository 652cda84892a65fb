#include "avcensus/cl.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

namespace avc::cl {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t ipow_u64(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

std::uint64_t CounterRng::draw(std::uint64_t counter) const {
    return mix64(seed ^ (counter * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
}

std::uint64_t CounterRng::uniform_mod(std::uint64_t m, std::uint64_t counter_base,
                                      std::uint64_t* used) const {
    // rejection from the largest multiple of m below 2^64
    std::uint64_t limit = (~0ull) - ((~0ull) % m + 1) % m;
    std::uint64_t c = counter_base;
    for (;;) {
        std::uint64_t v = draw(c++);
        if (v <= limit) {
            if (used) *used = c - counter_base;
            return v % m;
        }
    }
}

namespace {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    return (std::uint64_t)(((unsigned __int128)a * b) % mod);
}

// inverse of a mod `mod` for a coprime to ell (mod is a power of ell):
// Fermat inverse mod ell, then Newton lifting
std::uint64_t inv_mod_ellpow(std::uint64_t a, unsigned long ell, std::uint64_t mod) {
    std::uint64_t inv = 1, b = a % ell, e = ell - 2;
    while (e) {
        if (e & 1) inv = (inv * b) % ell;
        b = (b * b) % ell;
        e >>= 1;
    }
    // x -> x(2 - a x) doubles the exponent of correctness
    for (int it = 0; it < 7; ++it) {
        std::uint64_t ax = mul_mod(a, inv, mod);
        std::uint64_t two_minus = (2 + mod - ax) % mod;
        inv = mul_mod(inv, two_minus, mod);
    }
    return inv;
}

}  // namespace

CokernelResult cokernel(std::vector<std::vector<std::uint64_t>> m, unsigned long ell, unsigned k) {
    size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw PreconditionError("cokernel needs a square matrix");
    std::uint64_t mod = ipow_u64(ell, k);
    auto val = [&](std::uint64_t x) {
        unsigned v = 0;
        while (v < k && x % ell == 0) {
            x /= ell;
            ++v;
        }
        return v;
    };
    CokernelResult out;
    // diagonalize over Z/ell^k pivoting on minimal-valuation entries
    for (size_t t = 0; t < n; ++t) {
        size_t pi = t, pj = t;
        unsigned best = k + 1;
        for (size_t i = t; i < n; ++i)
            for (size_t j = t; j < n; ++j) {
                std::uint64_t x = m[i][j] % mod;
                unsigned v = (x == 0) ? k : val(x);
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (best >= k) {
            // remaining block is 0 mod ell^k: divisors out of the window
            out.precision_insufficient = true;
            break;
        }
        std::swap(m[t], m[pi]);
        for (size_t i = 0; i < n; ++i) std::swap(m[i][t], m[i][pj]);
        std::uint64_t pl = ipow_u64(ell, best);
        std::uint64_t unit = (m[t][t] % mod) / pl;
        std::uint64_t inv = inv_mod_ellpow(unit, ell, mod);
        for (size_t i = t + 1; i < n; ++i) {
            if (m[i][t] % mod == 0) continue;
            std::uint64_t f = mul_mod((m[i][t] % mod) / pl, inv, mod);
            for (size_t j = t; j < n; ++j)
                m[i][j] = (m[i][j] % mod + mod - mul_mod(f, m[t][j] % mod, mod)) % mod;
        }
        for (size_t j = t + 1; j < n; ++j) {
            if (m[t][j] % mod == 0) continue;
            std::uint64_t f = mul_mod((m[t][j] % mod) / pl, inv, mod);
            for (size_t i = t; i < n; ++i)
                m[i][j] = (m[i][j] % mod + mod - mul_mod(f, m[i][t] % mod, mod)) % mod;
        }
        if (best > 0) out.exponents.push_back(best);
    }
    std::sort(out.exponents.begin(), out.exponents.end(), std::greater<unsigned>());
    return out;
}

namespace {

// F^n mod ell^k for the matrix entries packed as uint64
std::vector<std::vector<std::uint64_t>> mat_pow(const std::vector<std::vector<std::uint64_t>>& f,
                                                unsigned n, std::uint64_t mod) {
    size_t g = f.size();
    auto mul = [&](const std::vector<std::vector<std::uint64_t>>& a,
                   const std::vector<std::vector<std::uint64_t>>& b) {
        std::vector<std::vector<std::uint64_t>> c(g, std::vector<std::uint64_t>(g, 0));
        for (size_t i = 0; i < g; ++i)
            for (size_t l = 0; l < g; ++l) {
                if (a[i][l] == 0) continue;
                unsigned __int128 av = a[i][l];
                for (size_t j = 0; j < g; ++j)
                    c[i][j] = (std::uint64_t)((c[i][j] + av * b[l][j]) % mod);
            }
        return c;
    };
    std::vector<std::vector<std::uint64_t>> r(g, std::vector<std::uint64_t>(g, 0));
    for (size_t i = 0; i < g; ++i) r[i][i] = 1;
    auto base = f;
    while (n) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

}  // namespace

JointEstimate joint_sample(unsigned g, unsigned long ell, unsigned k,
                           const std::vector<unsigned>& n_tuple,
                           const std::vector<std::vector<unsigned>>& targets,
                           std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    if (trials < 1) throw PreconditionError("need at least one trial");
    if (g < 1 || k < 1) throw PreconditionError("need g >= 1 and k >= 1");
    if (double(k) * std::log2(double(ell)) > 62) throw LimitExceededError("ell^k too large", 62);
    if (n_tuple.empty() || targets.size() != n_tuple.size())
        throw PreconditionError("one target profile per exponent");
    std::set<unsigned> distinct(n_tuple.begin(), n_tuple.end());
    if (distinct.size() != n_tuple.size()) throw PreconditionError("exponents must be distinct");

    std::uint64_t mod = ipow_u64(ell, k);
    CounterRng rng{seed};
    // each trial owns a fixed counter block: g^2 draws with rejection headroom
    std::uint64_t block = std::uint64_t(g) * g * 4 + 64;

    workers = std::max(1u, workers);
    std::vector<std::uint64_t> hits(workers, 0), pis(workers, 0);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> partition;
    std::uint64_t chunk = trials / workers, extra = trials % workers, lo = 0;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t hi = lo + chunk + (w < extra ? 1 : 0);
        partition.emplace_back(lo, hi);
        lo = hi;
    }

    auto run = [&](unsigned w) {
        auto [tlo, thi] = partition[w];
        std::vector<std::vector<std::uint64_t>> F(g, std::vector<std::uint64_t>(g));
        for (std::uint64_t t = tlo; t < thi; ++t) {
            std::uint64_t base = t * block;
            std::uint64_t off = 0;
            for (unsigned i = 0; i < g; ++i)
                for (unsigned j = 0; j < g; ++j) {
                    std::uint64_t used = 0;
                    F[i][j] = rng.uniform_mod(mod, base + off, &used);
                    off += used;
                }
            bool all_match = true;
            bool pi_flag = false;
            for (size_t jx = 0; jx < n_tuple.size(); ++jx) {
                auto Fn = mat_pow(F, n_tuple[jx], mod);
                for (unsigned i = 0; i < g; ++i)
                    for (unsigned j = 0; j < g; ++j) {
                        std::uint64_t d = (i == j) ? 1 : 0;
                        Fn[i][j] = (d + mod - Fn[i][j]) % mod;
                    }
                auto ck = cokernel(std::move(Fn), ell, k);
                if (ck.precision_insufficient) {
                    pi_flag = true;
                    all_match = false;
                    break;
                }
                std::vector<unsigned> want = targets[jx];
                std::sort(want.begin(), want.end(), std::greater<unsigned>());
                if (ck.exponents != want) {
                    all_match = false;
                    break;
                }
            }
            if (pi_flag) ++pis[w];
            else if (all_match) ++hits[w];
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }

    JointEstimate est;
    est.n_tuple = n_tuple;
    est.trials = trials;
    for (unsigned w = 0; w < workers; ++w) {
        est.hits += hits[w];
        est.precision_insufficient += pis[w];
    }
    est.seed = seed;
    est.workers = workers;
    est.partition = partition;
    est.p_hat = double(est.hits) / double(trials);
    est.std_err = std::sqrt(std::max(0.0, est.p_hat * (1.0 - est.p_hat) / double(trials)));
    return est;
}

Rat trivial_cokernel_density(unsigned g, unsigned long ell) {
    if (g < 1) throw PreconditionError("g must be >= 1");
    Rat p(1);
    for (unsigned k = 1; k <= g; ++k) p *= Rat(1) - Rat(1, pow_int(ell, k));
    p.canonicalize();
    return p;
}

Pm1Bound pm1_avoidance_bound(unsigned long ell, unsigned g, std::uint64_t trials,
                             std::uint64_t seed) {
    if (ell < 3) throw PreconditionError("ell = 2 is handled separately; need ell >= 3");
    Pm1Bound out;
    // partial product of (1 - ell^-k) until the tail is below 1e-7
    Rat prod(1);
    for (unsigned k = 1; k <= 64; ++k) {
        prod *= Rat(1) - Rat(1, pow_int(ell, k));
        if (std::pow(double(ell), -double(k)) / (double(ell) - 1.0) < 1e-8) break;
    }
    out.bound_rational = Rat(1) - Rat(2) * (Rat(1) - prod);
    out.bound_rational.canonicalize();
    out.bound = out.bound_rational.get_d();

    // Monte-Carlo: F mod ell with neither +1 nor -1 as eigenvalue, i.e.
    // det(F - 1) != 0 and det(F + 1) != 0 over F_ell
    CounterRng rng{seed};
    std::uint64_t block = std::uint64_t(g) * g * 4 + 64;
    std::uint64_t good = 0;
    auto det_mod = [&](std::vector<std::vector<std::uint64_t>> m) {
        std::uint64_t det = 1;
        size_t n = m.size();
        for (size_t c = 0; c < n; ++c) {
            size_t piv = c;
            while (piv < n && m[piv][c] % ell == 0) ++piv;
            if (piv == n) return std::uint64_t(0);
            if (piv != c) {
                std::swap(m[piv], m[c]);
                det = (det * (ell - 1)) % ell;
            }
            std::uint64_t p = m[c][c] % ell;
            det = (det * p) % ell;
            // inverse of p mod ell by Fermat
            std::uint64_t inv = 1, b = p, e = ell - 2;
            while (e) {
                if (e & 1) inv = (inv * b) % ell;
                b = (b * b) % ell;
                e >>= 1;
            }
            for (size_t i = c + 1; i < n; ++i) {
                std::uint64_t f = (m[i][c] % ell) * inv % ell;
                if (!f) continue;
                for (size_t j = c; j < n; ++j)
                    m[i][j] = (m[i][j] + (ell - f) * m[c][j]) % ell;
            }
        }
        return det % ell;
    };
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<std::vector<std::uint64_t>> F(g, std::vector<std::uint64_t>(g));
        std::uint64_t base = t * block, off = 0;
        for (unsigned i = 0; i < g; ++i)
            for (unsigned j = 0; j < g; ++j) {
                std::uint64_t used = 0;
                F[i][j] = rng.uniform_mod(ell, base + off, &used);
                off += used;
            }
        auto fm = F;
        auto fp = F;
        for (unsigned i = 0; i < g; ++i) {
            fm[i][i] = (fm[i][i] + ell - 1) % ell;
            fp[i][i] = (fp[i][i] + 1) % ell;
        }
        if (det_mod(fm) != 0 && det_mod(fp) != 0) ++good;
    }
    out.trials = trials;
    out.estimate = double(good) / double(trials);
    out.std_err = std::sqrt(std::max(0.0, out.estimate * (1 - out.estimate) / double(trials)));
    if (out.estimate < out.bound - 3 * out.std_err)
        throw InternalAssertionError("avoidance estimate fell below the closed-form bound");
    return out;
}

ProductEstimate product_over_S(const std::vector<PrimeEstimate>& estimates) {
    std::set<unsigned long> seen;
    for (const auto& e : estimates)
        if (!seen.insert(e.prime).second) throw PreconditionError("duplicate primes in S");
    ProductEstimate out;
    for (const auto& e : estimates) out.p *= e.p;
    double var = 0.0;
    for (const auto& e : estimates) {
        double rest = e.p != 0.0 ? out.p / e.p : 0.0;
        var += rest * rest * e.std_err * e.std_err;
    }
    out.std_err = std::sqrt(var);
    return out;
}

std::string to_json(const JointEstimate& e) {
    std::ostringstream os;
    os << "{\"trials\": " << e.trials << ", \"hits\": " << e.hits
       << ", \"precision_insufficient\": " << e.precision_insufficient
       << ", \"p_hat\": " << format_double(e.p_hat) << ", \"std_err\": " << format_double(e.std_err)
       << ", \"seed\": " << e.seed << ", \"workers\": " << e.workers << ", \"n\": [";
    for (size_t i = 0; i < e.n_tuple.size(); ++i) {
        if (i) os << ", ";
        os << e.n_tuple[i];
    }
    os << "], \"partition\": [";
    for (size_t i = 0; i < e.partition.size(); ++i) {
        if (i) os << ", ";
        os << "[" << e.partition[i].first << ", " << e.partition[i].second << "]";
    }
    os << "]}";
    return os.str();
}

}  // namespace avc::cl
