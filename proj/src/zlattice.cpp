#include "avcensus/zlattice.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>

#include "avcensus/isometry_detail.hpp"
#include "avcensus/numfield.hpp"

namespace avc::zlattice {

void SymmetricGram::validate() const {
    if (e.size() != n) throw PreconditionError("Gram shape mismatch");
    for (unsigned i = 0; i < n; ++i) {
        if (e[i].size() != n) throw PreconditionError("Gram shape mismatch");
        for (unsigned j = 0; j < n; ++j)
            if (e[i][j] != e[j][i]) throw PreconditionError("Gram must be symmetric");
    }
    for (unsigned j = 1; j <= n; ++j)
        if (leading_minor(j) <= 0) throw PreconditionError("Gram is not positive definite");
    if (det() != 1) throw PreconditionError("Gram is not unimodular");
}

Int SymmetricGram::leading_minor(unsigned jdim) const {
    // Bareiss fraction-free elimination on the leading block
    std::vector<std::vector<Int>> m(jdim, std::vector<Int>(jdim));
    for (unsigned i = 0; i < jdim; ++i)
        for (unsigned j = 0; j < jdim; ++j) m[i][j] = e[i][j];
    Int prev = 1;
    for (unsigned k = 0; k + 1 < jdim; ++k) {
        if (m[k][k] == 0) return Int(0);  // PD pivots never vanish; signal degenerate
        for (unsigned i = k + 1; i < jdim; ++i)
            for (unsigned j = k + 1; j < jdim; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return jdim == 0 ? Int(1) : m[jdim - 1][jdim - 1];
}

Int SymmetricGram::det() const { return leading_minor(n); }

bool SymmetricGram::is_even() const {
    for (unsigned i = 0; i < n; ++i)
        if (mpz_odd_p(e[i][i].get_mpz_t())) return false;
    return true;
}

std::string SymmetricGram::key() const {
    std::ostringstream os;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) os << e[i][j] << ";";
    return os.str();
}

SymmetricGram identity_gram(unsigned n) {
    SymmetricGram g;
    g.n = n;
    g.e.assign(n, std::vector<Int>(n, Int(0)));
    for (unsigned i = 0; i < n; ++i) g.e[i][i] = 1;
    return g;
}

namespace {

struct ZForm {
    using Value = Int;

    const SymmetricGram* G;
    std::unique_ptr<isometry_detail::ShortVectors> sv;

    explicit ZForm(const SymmetricGram& g) : G(&g) {
        std::vector<std::vector<Rat>> S(g.n, std::vector<Rat>(g.n));
        for (unsigned i = 0; i < g.n; ++i)
            for (unsigned j = 0; j < g.n; ++j) S[i][j] = Rat(g.e[i][j]);
        sv = std::make_unique<isometry_detail::ShortVectors>(S);
    }

    Value pair(const std::vector<int>& a, const std::vector<int>& b) const {
        Int acc = 0;
        for (unsigned i = 0; i < G->n; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < G->n; ++j) {
                if (b[j] == 0) continue;
                acc += G->e[i][j] * long(a[i]) * long(b[j]);
            }
        }
        return acc;
    }

    isometry_detail::ShortVectors& shorts() { return *sv; }
};

std::vector<Int> gram_diag(const SymmetricGram& g) {
    std::vector<Int> d(g.n);
    for (unsigned i = 0; i < g.n; ++i) d[i] = g.e[i][i];
    return d;
}

std::vector<std::vector<int>> standard_coords(unsigned n) {
    std::vector<std::vector<int>> b(n, std::vector<int>(n, 0));
    for (unsigned i = 0; i < n; ++i) b[i][i] = 1;
    return b;
}

// gamma_n^n for n = 1..8 (exact values of the Hermite constant powers)
const double kGammaPow[9] = {1, 1, 4.0 / 3.0, 2, 4, 8, 64.0 / 3.0, 64, 256};

}  // namespace

Int automorphism_count(const SymmetricGram& G) {
    ZForm form(G);
    std::vector<std::vector<Int>> pairs(G.n, std::vector<Int>(G.n));
    for (unsigned i = 0; i < G.n; ++i)
        for (unsigned j = 0; j < G.n; ++j) pairs[i][j] = G.e[i][j];
    isometry_detail::IsometryEngine<ZForm> eng(form, gram_diag(G), pairs);
    return eng.count_automorphisms(standard_coords(G.n));
}

bool isometric(const SymmetricGram& A, const SymmetricGram& B) {
    if (A.n != B.n) return false;
    ZForm form(B);
    std::vector<std::vector<Int>> pairs(A.n, std::vector<Int>(A.n));
    for (unsigned i = 0; i < A.n; ++i)
        for (unsigned j = 0; j < A.n; ++j) pairs[i][j] = A.e[i][j];
    isometry_detail::IsometryEngine<ZForm> eng(form, gram_diag(A), pairs);
    return eng.exists();
}

std::vector<SymmetricGram> enumerate_unimodular(unsigned n, const ZEnumOptions& opts) {
    if (n < 1 || n > 8) throw LimitExceededError("rank out of range", 8);
    if (n == 8 && !opts.allow_rank8)
        throw PreconditionError("the rank-8 search is opt-in (expected ~minutes); pass the flag");
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration<double>(opts.budget_seconds);

    std::vector<SymmetricGram> reps;
    SymmetricGram cur;
    cur.n = n;
    cur.e.assign(n, std::vector<Int>(n, Int(0)));

    // DFS over Minkowski-reduced Grams: ascending diagonal, 2|g_ij| <= d_i,
    // first nonzero entry of every column positive (sign canonicalization),
    // integer leading minors inside their Fischer/Minkowski windows.
    //
    // Norm-1 basis vectors split off orthogonally (their off-diagonals are
    // forced to 0), so once the diagonal leaves 1 the product bound applies
    // to the residual rank: prod of the diagonal entries >= 2 is at most
    // gamma_r^r with r = n - #ones.  That kills every minimum-2 branch below
    // rank 8 immediately.
    long checked = 0;
    std::function<void(unsigned)> rec_col = [&](unsigned j) {
        if ((++checked & 0xFFF) == 0 && std::chrono::steady_clock::now() > deadline)
            throw LimitExceededError("search budget exceeded", long(opts.budget_seconds));
        if (j == n) {
            if (cur.det() != 1) return;
            for (const auto& r : reps)
                if (isometric(cur, r)) return;
            reps.push_back(cur);
            return;
        }
        long dlo = (j == 0) ? 1 : long(cur.e[j - 1][j - 1].get_si());
        for (long dj = dlo;; ++dj) {
            if (dj >= 2) {
                unsigned ones = 0;
                while (ones < j && cur.e[ones][ones] == 1) ++ones;
                unsigned r = n - ones;
                double prod = 1;
                for (unsigned i = ones; i < j; ++i) prod *= cur.e[i][i].get_d();
                prod *= std::pow(double(dj), double(n - j));
                if (prod > kGammaPow[r] + 1e-9) break;
            }
            cur.e[j][j] = dj;
            // off-diagonal entries for column j
            std::function<void(unsigned, bool)> fill = [&](unsigned i, bool seen_nonzero) {
                if (i == j) {
                    Int mj = cur.leading_minor(j + 1);
                    if (mj < 1) return;
                    // Fischer: minor <= prod of diagonal entries; Minkowski on
                    // the leading block: minor >= prod d_i / gamma_{j+1}^{j+1}
                    Int cap = 1;
                    for (unsigned t = 0; t <= j; ++t) cap *= cur.e[t][t];
                    if (mj > cap) return;
                    if (mj.get_d() * kGammaPow[j + 1] < cap.get_d() - 1e-9) return;
                    rec_col(j + 1);
                    return;
                }
                long bound = long(cur.e[i][i].get_si()) / 2;
                for (long v = -bound; v <= bound; ++v) {
                    if (!seen_nonzero && v < 0) continue;  // sign canonicalization
                    cur.e[i][j] = v;
                    cur.e[j][i] = v;
                    fill(i + 1, seen_nonzero || v != 0);
                }
                cur.e[i][j] = 0;
                cur.e[j][i] = 0;
            };
            fill(0, false);
        }
        cur.e[j][j] = 0;
    };
    rec_col(0);
    std::sort(reps.begin(), reps.end(),
              [](const SymmetricGram& a, const SymmetricGram& b) { return a.key() < b.key(); });
    return reps;
}

Rat mass_brute(unsigned n, const ZEnumOptions& opts) {
    Rat total(0);
    for (const auto& g : enumerate_unimodular(n, opts)) total += Rat(1) / Rat(automorphism_count(g));
    total.canonicalize();
    return total;
}

Rat mass_even_unimodular(unsigned n) {
    if (n == 0 || n % 8 != 0) throw PreconditionError("even unimodular lattices need n = 0 mod 8");
    Rat m = numfield::bernoulli(n / 2) / Rat(long(n));
    if (m < 0) m = -m;
    for (unsigned j = 1; j < n / 2; ++j) {
        Rat b = numfield::bernoulli(2 * j) / Rat(4l * j);
        if (b < 0) b = -b;
        m *= b;
    }
    m.canonicalize();
    return m;
}

Int signed_permutation_order(unsigned n) { return pow_int(2ul, n) * factorial(n); }

}  // namespace avc::zlattice
