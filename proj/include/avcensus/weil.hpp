#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avcensus/poly.hpp"
#include "avcensus/support.hpp"

namespace avc::weil {

// Monic integer polynomial f(x) = x^{2g} - a_1 x^{2g-1} + a_2 x^{2g-2} - ...
// with the q-symmetry a_{2g-k} = q^{g-k} a_k, stored by its first g signed
// coefficients a_1..a_g.  Candidates need not pass is_weil.
struct WeilPolynomial {
    unsigned g = 0;
    unsigned long q = 2;
    std::vector<Int> a;  // a_1..a_g

    static WeilPolynomial make(unsigned g, unsigned long q, std::vector<Int> a);
    // full coefficient vector, ascending in x, length 2g+1
    poly::Poly coefficients() const;
    // reject vectors that break the q-symmetry
    static WeilPolynomial from_full_coefficients(unsigned long q, const poly::Poly& f);
    bool operator==(const WeilPolynomial& o) const = default;
};

// h of degree g with f(x) = x^g h(x + q/x); h = y^g + c_1 y^{g-1} + ... + c_g
struct RealWeilPolynomial {
    unsigned g = 0;
    unsigned long q = 2;
    std::vector<Int> c;  // c_1..c_g

    poly::Poly coefficients() const;  // ascending, length g+1, monic
};

RealWeilPolynomial to_real_weil(const WeilPolynomial& f);
WeilPolynomial from_real_weil(const RealWeilPolynomial& h);

// true iff every complex root of f has |z|^2 = q, decided exactly by Sturm
// counts on h and on the root-square polynomial k(u) over [0, 4q]
bool is_weil(const WeilPolynomial& f);

// power sums s_1..s_g of all 2g roots, by Newton's identities
std::vector<Int> power_sum_profile(const WeilPolynomial& f);

struct EnumerateOptions {
    bool keep_list = false;
    unsigned threads = 1;
    unsigned max_g = 4;       // desk-scale guard
    unsigned long max_q = 9;  // desk-scale guard
};

struct EnumerationResult {
    Int count;
    std::vector<WeilPolynomial> list;  // populated when keep_list
};

// iterate real-Weil coefficient vectors |c_k| <= ceil(C(g,k) (2 sqrt q)^k), filter by is_weil
EnumerationResult enumerate_weil(unsigned g, unsigned long q, const EnumerateOptions& opts = {});
// independent route: iterate a-vectors |a_k| <= ceil(C(2g,k) q^{k/2}), filter by is_weil
EnumerationResult enumerate_weil_coefficient_space(unsigned g, unsigned long q,
                                                   const EnumerateOptions& opts = {});

struct CountBounds {
    std::string power_sum_bound_decimal;  // (2g)^g q^{g(g+1)/4}, 30 digits
    double power_sum_bound_log2 = 0.0;
    Int interval_bound;  // prod_k (2 floor(2g q^{k/2}) + 1)
};

CountBounds count_bounds(unsigned g, unsigned long q);

std::string to_json(const std::vector<WeilPolynomial>& list);

}  // namespace avc::weil
