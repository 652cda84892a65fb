#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avcensus/support.hpp"

namespace avc::cl {

// Counter-based generator: draw(i) depends only on (seed, i), so disjoint
// index ranges give independent reproducible substreams.  Algorithm identity
// "splitmix64-counter" is pinned in the configuration defaults.
struct CounterRng {
    std::uint64_t seed = 0;
    std::uint64_t draw(std::uint64_t counter) const;
    // uniform residue mod m via rejection sampling
    std::uint64_t uniform_mod(std::uint64_t m, std::uint64_t counter_base,
                              std::uint64_t* used) const;
};

// elementary-divisor profile of an l-group, exponents weakly decreasing;
// absent when the window ell^k cannot decide every divisor
struct CokernelResult {
    bool precision_insufficient = false;
    std::vector<unsigned> exponents;  // entries in [1, k)

    bool is_trivial() const { return !precision_insufficient && exponents.empty(); }
    bool operator==(const CokernelResult& o) const = default;
};

// elementary divisors of coker(M) for a square matrix over Z/ell^k
CokernelResult cokernel(std::vector<std::vector<std::uint64_t>> m, unsigned long ell, unsigned k);

struct JointEstimate {
    std::vector<unsigned> n_tuple;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    std::uint64_t precision_insufficient = 0;
    double p_hat = 0.0;
    double std_err = 0.0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> partition;  // [lo, hi) per worker
};

// sample F uniform over End_g(Z/ell^k); joint event coker(1 - F^{n_j}) = H_j
JointEstimate joint_sample(unsigned g, unsigned long ell, unsigned k,
                           const std::vector<unsigned>& n_tuple,
                           const std::vector<std::vector<unsigned>>& targets,
                           std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

// prod_{k=1}^{g} (1 - ell^{-k}) = #GL_g(F_ell) / ell^{g^2}
Rat trivial_cokernel_density(unsigned g, unsigned long ell);

struct Pm1Bound {
    Rat bound_rational;     // partial product evaluation, within 1e-7 of the limit
    double bound = 0.0;     // 1 - 2 (1 - prod (1 - ell^-k))
    double estimate = 0.0;  // Monte-Carlo estimate of the avoidance probability
    double std_err = 0.0;
    std::uint64_t trials = 0;
};

// probability that F mod ell has neither +1 nor -1 as an eigenvalue, with the
// closed-form lower bound; asserts estimate >= bound - 3 sigma
Pm1Bound pm1_avoidance_bound(unsigned long ell, unsigned g = 6, std::uint64_t trials = 20000,
                             std::uint64_t seed = 1);

struct PrimeEstimate {
    unsigned long prime;
    double p = 0.0;
    double std_err = 0.0;
};

struct ProductEstimate {
    double p = 1.0;
    double std_err = 0.0;
};

// product over distinct primes with first-order error propagation
ProductEstimate product_over_S(const std::vector<PrimeEstimate>& estimates);

std::string to_json(const JointEstimate& e);

}  // namespace avc::cl
