#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "avcensus/quadint.hpp"
#include "avcensus/support.hpp"

namespace avc::hermitian {

using quadint::QuadInt;
using quadint::QuadRing;

// Positive definite unimodular hermitian Gram matrix over the ring of
// integers of Q(sqrt(-d)); diagonal entries are rational integers.
struct HermitianGram {
    QuadRing ring;
    unsigned n = 1;
    std::vector<std::vector<QuadInt>> e;

    void validate() const;            // conjugate symmetry, positivity, det 1
    Rat det() const;                  // exact real rational
    Rat leading_minor(unsigned j) const;
    unsigned norm_gcd() const;        // 1 (odd genus) or 2 (even genus)
    std::string key() const;          // total order for canonical lists
};

struct EnumOptions {
    unsigned bound_scale = 2;  // doubles the Hermite-derived diagonal caps
    unsigned max_rank = 4;
};

// one representative per isometry class, canonically sorted
std::vector<HermitianGram> enumerate_classes(unsigned long d, unsigned n,
                                             const EnumOptions& opts = {});

Int automorphism_count(const HermitianGram& G);
bool isometric(const HermitianGram& A, const HermitianGram& B);

// sum of 1/#Aut over all classes (all norm-ideal genera together)
Rat mass_brute(unsigned long d, unsigned n, const EnumOptions& opts = {});

struct LambdaFactor {
    unsigned k = 1;
    Rat rational;
    unsigned pi_pow = 0;
    int sqrt_pow = 0;  // power of sqrt(|D|)
};

struct GenusMass {
    unsigned norm_gcd = 1;
    Rat mass;
    Rat c_rational;  // rational part of c(M) (pi and sqrt powers tracked aside)
    int c_pi_pow = 0;
    int c_sqrt_pow = 0;
    std::vector<LambdaFactor> lambda;
    Rat ramified_beta;
    std::string beta_source;
};

struct MassAudit {
    Rat total;
    std::vector<GenusMass> genera;
    bool pi_cancelled = false;
};

// Gan-Yu style evaluation: 2 c(M) |D_K|^{n^2/2} / prod beta_v with K = Q,
// unramified part as a product of exact zeta/L values, ramified densities
// from the orthogonal-group rule or the calibration table.  Sums over the
// norm-ideal genera recorded for (d, n).
MassAudit mass_formula(unsigned long d, unsigned n);

// #O^type_n(F_q) / q^{dim O_n}; type +1/-1 used for even n only
Rat orthogonal_density(unsigned n, unsigned long q, int type);

struct CalibrationRow {
    unsigned long abs_disc = 3;
    unsigned rank = 1;
    unsigned norm_gcd = 1;
    Rat beta;
    std::string source;  // "orthogonal" or "calibrated"
};

const std::vector<CalibrationRow>& builtin_calibration();
// re-derive the table by solving the mass equation against brute enumeration
std::vector<CalibrationRow> calibrate(unsigned max_rank = 2);
std::string calibration_to_json(const std::vector<CalibrationRow>& rows);

struct MassEstimate {
    double leading = 0.0;     // [K:Q] n^2 log n
    double exact_part = 0.0;  // log prod (d-1)!/(2pi)^d + (n(n+1)/4) log |D_L|-norm
};
MassEstimate log_mass_estimate(unsigned K_degree, unsigned n, double D_L_norm);

// sum_i deg_i * n_i^2 * ln(n_i)
double orbit_count_estimate(const std::vector<unsigned>& degrees,
                            const std::vector<unsigned>& ranks);

std::string to_json(const std::vector<HermitianGram>& classes);

}  // namespace avc::hermitian
