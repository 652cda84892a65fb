#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avcensus/support.hpp"

namespace avc::census {

// exact bound of the shape mantissa * 2^{two_exp} * p^{p_exp}; exponent
// bookkeeping stays rational so identities can be asserted exactly
struct ExactBound {
    Int mantissa = 1;
    Rat two_exp{0};
    Rat p_exp{0};

    double log2_value(unsigned long p) const;
    ExactBound times(const ExactBound& o) const;
};

struct IsogenyBound {
    ExactBound bound;  // (2g)^g q^{g(g+1)/4}
    double log2 = 0.0;
    std::optional<Int> exact_count;  // enumerated alongside for g <= 2, q <= 3
};

IsogenyBound isogeny_bound(unsigned g, unsigned long q);

struct PerClassBound {
    ExactBound orbit;       // (2 sqrt p)^{4 C(2g,2)}
    ExactBound stabilizer;  // (2 sqrt p)^{4 C(2g,2)}
    ExactBound class_term;  // (2 sqrt p)^{g^2/2} leading part
    Rat leading_orbit;      // g^2 coefficient of the p-exponent: 4
    Rat leading_stabilizer; // 4
    Rat leading_class;      // 1/4
    Rat leading_total;      // asserted to equal 33/4
    double log2 = 0.0;
    double two_power_slack_log2 = 0.0;  // the 2-part the leading term hides
};

PerClassBound per_class_bound(unsigned g, unsigned long p);

struct TotalBound {
    ExactBound bound;
    Rat leading_coefficient;  // asserted: 1/4 + 33/4 = 17/2
    double log2 = 0.0;
};

TotalBound total_unpolarized_bound(unsigned g, unsigned long p);

struct SquarefreeBound {
    ExactBound bound;  // (2 sqrt p)^{4 C(g,2) + g^2}
    Rat exponent_over_g2;  // (4 C(g,2) + g^2)/g^2, tends to 3
    double log2 = 0.0;
    bool leading_term_only = true;  // the absolute constant is not pinned
};

SquarefreeBound squarefree_polarization_bound(unsigned g, unsigned long p);

// leading term g^2 ln g of the principally-polarized lower bound
double ppav_lower_bound(unsigned g);

struct ConvexityResult {
    bool ok = false;
    Rat sum_squares;
    Rat max_value;  // g^2 (eps^2 + (1-eps)^2), attained at extreme points
};

ConvexityResult convexity_check(const std::vector<Rat>& x, const Rat& g, const Rat& eps);

struct FactorProfile {
    // (degree [K_i:Q], rank n_i)
    std::vector<std::pair<unsigned, unsigned>> factors;
    unsigned g() const;
};

// index of the dominant degree-1 factor with n_i >= 0.99 g when the orbit
// estimate clears 0.99 g^2 ln g; absent otherwise.  A cleared threshold with
// no dominant factor is an internal assertion failure.
std::optional<size_t> dominant_factor_test(const FactorProfile& profile);

struct CensusRow {
    unsigned g = 1;
    double isogeny_log2 = 0.0;
    double per_class_log2 = 0.0;
    double total_log2 = 0.0;
    double squarefree_log2 = 0.0;  // NaN-free: 0 for g < 2
    double ppav_leading_ln = 0.0;
    std::string isogeny_p_exp;   // exact rationals, as strings
    std::string per_class_p_exp;
    std::string total_p_exp;
    std::string json;  // full component audit, deterministic
};

struct CensusReport {
    unsigned long p = 2;
    unsigned g_min = 1, g_max = 0;
    std::vector<CensusRow> rows;
};

CensusReport report(unsigned long p, unsigned g_min, unsigned g_max,
                    const std::string& cache_dir = "", unsigned threads = 1);

std::string to_csv(const CensusReport& r);
std::string to_json(const CensusReport& r);

extern const char* kCodeVersion;

}  // namespace avc::census
