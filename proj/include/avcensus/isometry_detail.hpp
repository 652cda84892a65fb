#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "avcensus/support.hpp"

namespace avc::isometry_detail {

// Exact short-vector enumeration for a positive definite rational Gram S
// (m x m).  Bounds come from a floating Cholesky factor widened by one unit;
// every candidate is validated exactly against 2S (an integer matrix).
class ShortVectors {
  public:
    explicit ShortVectors(const std::vector<std::vector<Rat>>& S) : m_(S.size()) {
        twoS_.assign(m_, std::vector<Int>(m_));
        for (size_t i = 0; i < m_; ++i)
            for (size_t j = 0; j < m_; ++j) {
                Rat v = S[i][j] * 2;
                if (v.get_den() != 1)
                    throw InternalAssertionError("2S must be an integer matrix");
                twoS_[i][j] = v.get_num();
            }
        // floating Cholesky: Q(x) = sum_i D_i (x_i + sum_{j>i} L_ij x_j)^2
        std::vector<std::vector<double>> a(m_, std::vector<double>(m_));
        for (size_t i = 0; i < m_; ++i)
            for (size_t j = 0; j < m_; ++j) a[i][j] = S[i][j].get_d();
        L_.assign(m_, std::vector<double>(m_, 0.0));
        D_.assign(m_, 0.0);
        for (size_t i = 0; i < m_; ++i) {
            D_[i] = a[i][i];
            if (D_[i] <= 0) throw PreconditionError("form is not positive definite");
            for (size_t j = i + 1; j < m_; ++j) L_[i][j] = a[i][j] / D_[i];
            for (size_t k = i + 1; k < m_; ++k)
                for (size_t l = k; l < m_; ++l) a[k][l] -= a[i][k] * a[i][l] / D_[i];
            for (size_t k = i + 1; k < m_; ++k)
                for (size_t l = 0; l < k; ++l) a[k][l] = a[l][k];
        }
    }

    Int norm_of(const std::vector<int>& x) const {
        Int acc = 0;
        for (size_t i = 0; i < m_; ++i) {
            if (x[i] == 0) continue;
            for (size_t j = 0; j < m_; ++j) {
                if (x[j] == 0) continue;
                acc += twoS_[i][j] * long(x[i]) * long(x[j]);
            }
        }
        if (mpz_odd_p(acc.get_mpz_t())) throw InternalAssertionError("odd doubled norm");
        return acc / 2;
    }

    // all x in Z^m with x^T S x == t; includes both sign orbits; deterministic
    const std::vector<std::vector<int>>& with_norm(const Int& t) {
        auto it = cache_.find(t);
        if (it != cache_.end()) return it->second;
        std::vector<std::vector<int>> found;
        if (t >= 0) {
            double budget = t.get_d() + 1e-6;
            std::vector<int> x(m_, 0);
            enumerate(int(m_) - 1, budget, x, t, found);
        }
        std::sort(found.begin(), found.end());
        return cache_.emplace(t, std::move(found)).first->second;
    }

  private:
    void enumerate(int i, double budget, std::vector<int>& x, const Int& t,
                   std::vector<std::vector<int>>& out) {
        if (i < 0) {
            if (norm_of(x) == t) out.push_back(x);
            return;
        }
        double s = 0.0;
        for (size_t j = i + 1; j < m_; ++j) s += L_[i][j] * x[j];
        double c = std::sqrt(std::max(0.0, budget / D_[i])) + 1e-9;
        int lo = int(std::floor(-c - s)) - 1;
        int hi = int(std::ceil(c - s)) + 1;
        for (int v = lo; v <= hi; ++v) {
            x[i] = v;
            double used = D_[i] * (v + s) * (v + s);
            if (used > budget + 1e-6) continue;
            enumerate(i - 1, budget - used, x, t, out);
        }
        x[i] = 0;
    }

    size_t m_;
    std::vector<std::vector<Int>> twoS_;
    std::vector<std::vector<double>> L_;
    std::vector<double> D_;
    std::map<Int, std::vector<std::vector<int>>> cache_;
};

// Backtracking over images of basis vectors.  A Form supplies:
//   using Value = ...;                    pair value type with operator==
//   size_t zrank() const;                 Z-rank of the coordinate space
//   Value pair(coords, coords) const;     the (possibly hermitian) product
//   Int norm(coords) const;               pair(v, v) as an integer
//   ShortVectors& shorts();               short vectors of the target lattice
// The source Gram is given through diag (norms) and the required pair values.
template <class Form>
class IsometryEngine {
  public:
    IsometryEngine(Form& target, std::vector<Int> source_diag,
                   std::vector<std::vector<typename Form::Value>> source_pairs)
        : target_(target), diag_(std::move(source_diag)), pairs_(std::move(source_pairs)) {}

    // is there an isometry of the source Gram into the target lattice with the
    // first `fixed` images pinned to `prefix`?
    bool exists(const std::vector<std::vector<int>>& prefix) {
        chosen_ = prefix;
        return dfs_exists(prefix.size());
    }

    bool exists() { return exists({}); }

    // |Aut| when source and target describe the same lattice: the product over
    // levels k of the number of completable images of e_k with e_1..e_{k-1}
    // pinned to themselves.  Each factor is a coset index, so the product is
    // the full group order.
    Int count_automorphisms(const std::vector<std::vector<int>>& standard_basis) {
        size_t n = diag_.size();
        Int total = 1;
        std::vector<std::vector<int>> prefix;
        for (size_t k = 0; k < n; ++k) {
            long a_k = 0;
            for (const auto& w : candidates(k, prefix)) {
                chosen_ = prefix;
                chosen_.push_back(w);
                if (dfs_exists(k + 1)) ++a_k;
            }
            if (a_k == 0) throw InternalAssertionError("identity lost during automorphism count");
            total *= a_k;
            prefix.push_back(standard_basis[k]);
        }
        return total;
    }

  private:
    std::vector<std::vector<int>> candidates(size_t k, const std::vector<std::vector<int>>& prefix) {
        std::vector<std::vector<int>> out;
        for (const auto& w : target_.shorts().with_norm(diag_[k])) {
            bool ok = true;
            for (size_t i = 0; i < k && ok; ++i)
                ok = (target_.pair(prefix[i], w) == pairs_[i][k]);
            if (ok) out.push_back(w);
        }
        return out;
    }

    bool dfs_exists(size_t k) {
        if (k == diag_.size()) return true;
        for (const auto& w : target_.shorts().with_norm(diag_[k])) {
            bool ok = true;
            for (size_t i = 0; i < k && ok; ++i)
                ok = (target_.pair(chosen_[i], w) == pairs_[i][k]);
            if (!ok) continue;
            chosen_.push_back(w);
            if (dfs_exists(k + 1)) {
                chosen_.pop_back();
                return true;
            }
            chosen_.pop_back();
        }
        return false;
    }

    Form& target_;
    std::vector<Int> diag_;
    std::vector<std::vector<typename Form::Value>> pairs_;
    std::vector<std::vector<int>> chosen_;
};

}  // namespace avc::isometry_detail
