#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace avc {

using Int = mpz_class;
using Rat = mpq_class;

// Precondition violations map to CLI exit code 2.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LimitExceededError : PreconditionError {
    LimitExceededError(const std::string& what_arg, long limit)
        : PreconditionError(what_arg + " (limit " + std::to_string(limit) + ")"), limit(limit) {}
    long limit;
};

// A result that could change at higher working precision is never returned
// as a number; callers get this instead.
struct PrecisionInsufficientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violation of an identity the library asserts about its own quantities.
// Maps to CLI exit code 3 and should never fire on valid inputs.
struct InternalAssertionError : std::logic_error {
    using std::logic_error::logic_error;
};

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int pow_int(unsigned long base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

// ceil(sqrt(n)) for n >= 0
inline Int ceil_sqrt(const Int& n) {
    Int r = isqrt(n);
    if (r * r < n) r += 1;
    return r;
}

// l-adic valuation of n != 0
inline unsigned long valuation(Int n, const Int& ell) {
    if (n == 0) throw PreconditionError("valuation of zero is infinite");
    unsigned long v = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), ell.get_mpz_t());
        if (r != 0) return v;
        n = q;
        ++v;
    }
}

inline int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// q = p^e with p prime, e >= 1; reports p on request
inline bool is_prime_power(std::uint64_t q, std::uint64_t* p_out = nullptr) {
    if (q < 2) return false;
    std::uint64_t q0 = q;
    for (std::uint64_t d = 2; d * d <= q0; ++d) {
        if (q0 % d == 0) {
            while (q0 % d == 0) q0 /= d;
            if (q0 != 1) return false;
            if (p_out) *p_out = d;
            return true;
        }
    }
    if (p_out) *p_out = q0;
    return true;
}

inline std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
    std::vector<bool> sieve(n + 1, true);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j <= n; j += i) sieve[j] = false;
    }
    return out;
}

inline double log2_of(const Int& n) {
    if (n <= 0) throw PreconditionError("log2 of non-positive integer");
    long exp2;
    double m = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log2(m) + double(exp2);
}

inline double to_double(const Rat& q) { return q.get_d(); }

// deterministic decimal rendering for doubles in machine-facing output
std::string format_double(double x);

// high-precision decimal of a*sqrt(b)*2^0 style values handled by callers via mpf
std::string mpf_decimal(const mpf_class& v, int digits = 30);

}  // namespace avc
