#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "avcensus/poly.hpp"
#include "avcensus/support.hpp"

namespace avc::lattice {

// ---- partitions ----

// visit every partition of j (parts weakly decreasing)
void for_each_partition(unsigned j, const std::function<void(const std::vector<unsigned>&)>& fn);
// p(j) by the pentagonal-number recurrence
Int partition_count(unsigned j);
// p(j) <= 2^j
bool partition_bound_check(unsigned j);

// sum over partitions lambda of j of ell^{j - length(lambda)}
Int hilb_count(unsigned long ell, unsigned j, unsigned max_j = 12);
// colength-j ideals of the power series ring, counted inside the finite
// quotient by the j-th power of the maximal ideal; must equal hilb_count
Int hilb_brute_force(unsigned long ell, unsigned j);

// ---- stable sublattice counting ----

struct TruncatedMatrix {
    unsigned long ell = 2;
    unsigned k = 1;  // entries live in Z/ell^k
    unsigned n = 1;
    std::vector<std::vector<std::int64_t>> entries;  // n x n, reduced mod ell^k

    void validate() const;
    std::int64_t modulus() const;  // ell^k
};

// counts of gamma-stable sublattices of Z_ell^n per colength c <= max_colength;
// requires max_colength < k so stability is decided at the given precision
std::map<unsigned, Int> count_stable_sublattices(const TruncatedMatrix& gamma,
                                                 unsigned max_colength,
                                                 unsigned max_cells = 16);

// ---- isotypic gluing ----

struct GlueResult {
    Int brute_count;       // exhaustive count of stable lattices with fixed
                           // isotypic intersections
    Int formula_count;     // ell^{delta}, delta summed over unordered pairs
    unsigned long delta_unordered = 0;
    unsigned long delta_ordered = 0;  // the doubled sum, reported for bound chains
};

// gamma = companion(f1) (+) companion(f2); f1, f2 monic, coprime over Q,
// deg f1 + deg f2 <= 4.  Asserts brute_count == formula_count.
GlueResult isotypic_glue_count(const poly::Poly& f1, const poly::Poly& f2, unsigned long ell,
                               unsigned precision);

// ---- valuations and closed-form bounds ----

struct ValuationResult {
    bool infinite = false;
    unsigned long v = 0;
};

ValuationResult resultant_valuation(const poly::Poly& f, const poly::Poly& g, unsigned long ell);
ValuationResult discriminant_valuation(const poly::Poly& f, unsigned long ell);

// ell^{4 n delta}
Int stable_orbit_bound(unsigned n, unsigned long delta, unsigned long ell);

struct LogBound {
    double log2_value = 0.0;
    double ln_value = 0.0;
    double decimal = 0.0;  // overflows to inf for large inputs; log fields stay exact-ish
};

// (2 sqrt p)^{4 C(2g,2)}
LogBound global_orbit_bound(unsigned g, unsigned long p);

}  // namespace avc::lattice
