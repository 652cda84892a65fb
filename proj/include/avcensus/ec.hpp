#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avcensus/support.hpp"

namespace avc::ec {

// short Weierstrass curve y^2 = x^3 + a4 x + a6 over F_p, p > 3
struct Curve {
    unsigned long p = 5;
    unsigned long a4 = 0;
    unsigned long a6 = 1;

    bool is_singular() const;  // 4 a4^3 + 27 a6^2 = 0 mod p
};

struct TraceData {
    long a = 0;       // trace of Frobenius
    Int n1;           // #E(F_p) = p + 1 - a
    Int n2;           // #E(F_{p^2}) = (p + 1 - a)(p + 1 + a)
};

// naive point count, p <= max_p; verifies the Hasse bound a^2 <= 4p
TraceData point_count(const Curve& E, unsigned long max_p = 100000);

// independent oracle: count F_{p^2} points directly in F_p[t]/(irreducible)
Int point_count_fp2_brute(const Curve& E);

struct ScanReport {
    unsigned long p = 0;
    unsigned long curves_scanned = 0;
    std::vector<Curve> violations;  // must stay empty
};

// every nonsingular curve over F_p: #E(F_p) and #E(F_{p^2}) are not both
// powers of p (N = 1 counts as the trivial p-group)
ScanReport verify_not_both_p_groups(unsigned long p, unsigned long max_scan_p = 1000);

// integers (a, b) with a^2 - 4p = -d b^2 and |a| <= 2 sqrt(p), smallest |a|
// first (positive a preferred at ties), or absent
std::optional<std::pair<long, long>> find_cm_trace(unsigned long p, unsigned long d);

struct DensityReport {
    std::uint64_t count_good = 0;
    std::uint64_t count_all = 0;
    double ratio = 0.0;
};

// a prime is good when Kronecker(D|p) = 1 for at least one of the nine
// class-number-1 fundamental discriminants
DensityReport good_prime_density(std::uint64_t X, std::uint64_t max_x = 10000000);

extern const long kClassNumberOneDiscs[9];  // -3, -4, -7, -8, -11, -19, -43, -67, -163

}  // namespace avc::ec
