#pragma once

#include <string>
#include <vector>

#include "avcensus/support.hpp"

namespace avc::numfield {

// Q(sqrt(-d)) for squarefree d >= 1
struct ImagQuadField {
    unsigned long d = 1;
    long D = -4;        // fundamental discriminant (-d or -4d)
    unsigned w = 4;     // number of roots of unity
    unsigned long h = 1;  // class number (filled by make)

    static ImagQuadField make(unsigned long d);
    long abs_disc() const { return -D; }
};

bool is_squarefree(unsigned long d);

// reduced primitive binary quadratic forms of discriminant D(-d)
unsigned long class_number(unsigned long d, unsigned long max_d = 1000000);
// independent route: enumerate near-reduced forms, canonicalize by the
// reduction algorithm, count distinct orbits
unsigned long class_number_bruteforce(unsigned long d);

std::vector<unsigned long> class_number_one_scan(unsigned long limit);

// max(0.00299 exp(0.48 r1 + 0.06 r2), 1/500)
double regulator_lower_bound(unsigned r1, unsigned r2);

// (e log D_K / (2(d-1)))^{d-1}; rejects d = 1 (degenerate)
double zeta_residue_upper_bound(unsigned d, const Int& D_K);

struct CMBoundInput {
    unsigned degree = 2;  // d = r1 + 2 r2
    unsigned r1 = 0;
    unsigned r2 = 1;
    Int abs_disc = 3;  // D_K >= 1
};

struct LogValue {
    double ln_value = 0.0;
    double log2_value = 0.0;
    double per_unit_g = 0.0;  // ln value divided by g
};

// ln of  prod sqrt(D_K) (log D_K)^{d-1} * 500^g e^g  with g = sum d_i / 2
LogValue class_number_bound_chain(const std::vector<CMBoundInput>& fields);

// Kronecker character chi_D for a fundamental discriminant D
struct QuadCharacter {
    long D = 1;  // 1 means the trivial character
    int operator()(const Int& n) const;
    unsigned long conductor() const { return (unsigned long)(D < 0 ? -D : D); }
    bool is_odd() const { return D < 0; }
};

// exact Bernoulli numbers B_n (B_1 = -1/2 convention)
Rat bernoulli(unsigned n);
// generalized Bernoulli number B_{k,chi} for chi = chi_D
Rat generalized_bernoulli(unsigned k, long D);

// L(k, chi_D) = rational * pi^k * sqrt(|D|)^{sqrt_pow}; when |D| is a perfect
// square the root is folded into the rational and sqrt_pow is 0
struct LValue {
    Rat rational;
    unsigned pi_power = 0;
    unsigned long abs_disc = 1;
    int sqrt_pow = 0;

    double approx() const;
};

// trivial chi (D=1): zeta(k) for even k; odd quadratic chi: L(k,chi) for odd k.
// Parity mismatches are rejected.
LValue dirichlet_L_exact(const QuadCharacter& chi, unsigned k);

// universal bound on orders of finite subgroups of GL_n(Z):
// prod over odd p <= n+1 of p^{M(n,p)} times 2^{val_2(#GL_n(F_3))}
Int minkowski_bound(unsigned n);

// #GL_n(F_q) as an exact integer
Int gl_order(unsigned n, unsigned long q);

}  // namespace avc::numfield
