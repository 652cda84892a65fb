#pragma once

#include <string>
#include <vector>

#include "avcensus/support.hpp"

namespace avc::zlattice {

// positive definite unimodular symmetric integer Gram matrix
struct SymmetricGram {
    unsigned n = 1;
    std::vector<std::vector<Int>> e;

    void validate() const;
    Int det() const;
    Int leading_minor(unsigned j) const;
    bool is_even() const;  // all diagonal entries even
    std::string key() const;
};

struct ZEnumOptions {
    bool allow_rank8 = false;       // the minimum-2 branch at n = 8 is opt-in
    double budget_seconds = 3600;   // wall budget for the deep search
};

// one representative per isometry class of positive definite unimodular
// lattices of rank n, by exhaustive search over Minkowski-style reduced Grams
std::vector<SymmetricGram> enumerate_unimodular(unsigned n, const ZEnumOptions& opts = {});

Int automorphism_count(const SymmetricGram& G);
bool isometric(const SymmetricGram& A, const SymmetricGram& B);

Rat mass_brute(unsigned n, const ZEnumOptions& opts = {});

// Minkowski-Siegel mass of the even unimodular genus, n = 0 mod 8:
// |B_{n/2}|/n * prod_{j<n/2} |B_{2j}|/(4j)
Rat mass_even_unimodular(unsigned n);

// order of the signed permutation group, 2^n n!
Int signed_permutation_order(unsigned n);

SymmetricGram identity_gram(unsigned n);

}  // namespace avc::zlattice
