#include "avcensus/ec.hpp"

#include <cmath>

namespace avc::ec {

const long kClassNumberOneDiscs[9] = {-3, -4, -7, -8, -11, -19, -43, -67, -163};

bool Curve::is_singular() const {
    unsigned long long disc =
        (4ull * a4 % p * a4 % p * a4 % p + 27ull * a6 % p * a6 % p) % p;
    return disc == 0;
}

namespace {

// quadratic-residue table: qr[x] = 1 if x is a nonzero square, 0 if x = 0, -1 otherwise
std::vector<int> legendre_table(unsigned long p) {
    std::vector<int> t(p, -1);
    t[0] = 0;
    for (unsigned long x = 1; x < p; ++x) t[x * x % p] = 1;
    return t;
}

}  // namespace

TraceData point_count(const Curve& E, unsigned long max_p) {
    if (E.p <= 3 || !is_prime_u64(E.p)) throw PreconditionError("p must be a prime > 3");
    if (E.p > max_p) throw LimitExceededError("naive point count p too large", long(max_p));
    if (E.is_singular()) throw PreconditionError("curve is singular");
    auto qr = legendre_table(E.p);
    long long sum = 0;
    for (unsigned long x = 0; x < E.p; ++x) {
        unsigned long rhs = ((unsigned long long)x * x % E.p * x % E.p +
                             (unsigned long long)E.a4 * x % E.p + E.a6) % E.p;
        sum += qr[rhs];
    }
    TraceData td;
    td.n1 = Int((long)E.p) + 1 + Int((long)sum);
    Int a = Int((long)E.p) + 1 - td.n1;
    td.a = a.get_si();
    if (a * a > 4 * Int((long)E.p)) throw InternalAssertionError("Hasse bound violated");
    td.n2 = td.n1 * (Int((long)E.p) + 1 + td.a);
    return td;
}

Int point_count_fp2_brute(const Curve& E) {
    unsigned long p = E.p;
    if (p > 13) throw LimitExceededError("F_{p^2} brute force p too large", 13);
    if (E.is_singular()) throw PreconditionError("curve is singular");
    // F_{p^2} = F_p[t]/(t^2 + bt + c), least (b, c) with t^2 + bt + c irreducible
    unsigned long b0 = 0, c0 = 0;
    bool found = false;
    auto qr = legendre_table(p);
    for (unsigned long b = 0; b < p && !found; ++b)
        for (unsigned long c = 0; c < p && !found; ++c) {
            unsigned long disc = ((b * b % p) + p - (4 * c % p)) % p;
            if (qr[disc] == -1) {
                b0 = b;
                c0 = c;
                found = true;
            }
        }
    if (!found) throw InternalAssertionError("no irreducible quadratic found");
    // elements x = u + v t; arithmetic mod (t^2 + b0 t + c0)
    auto mul = [&](std::pair<unsigned long, unsigned long> a,
                   std::pair<unsigned long, unsigned long> b) {
        unsigned long u = (a.first * b.first) % p;
        unsigned long v = (a.first * b.second + a.second * b.first) % p;
        unsigned long w = (a.second * b.second) % p;
        // w t^2 = -b0 w t - c0 w
        v = (v + (p - b0 % p) * w) % p;
        u = (u + (p - c0 % p) * w) % p;
        return std::make_pair(u, v);
    };
    auto add = [&](std::pair<unsigned long, unsigned long> a,
                   std::pair<unsigned long, unsigned long> b) {
        return std::make_pair((a.first + b.first) % p, (a.second + b.second) % p);
    };
    // squares in F_{p^2}
    std::vector<int> sq(p * p, -1);
    auto idx = [&](std::pair<unsigned long, unsigned long> a) { return a.first * p + a.second; };
    sq[0] = 0;
    for (unsigned long u = 0; u < p; ++u)
        for (unsigned long v = 0; v < p; ++v) {
            if (u == 0 && v == 0) continue;
            sq[idx(mul({u, v}, {u, v}))] = 1;
        }
    Int count = 1;  // point at infinity
    for (unsigned long u = 0; u < p; ++u)
        for (unsigned long v = 0; v < p; ++v) {
            auto x = std::make_pair(u, v);
            auto rhs = add(add(mul(mul(x, x), x), mul({E.a4 % p, 0}, x)), {E.a6 % p, 0});
            int s = sq[idx(rhs)];
            count += (s == 0) ? 1 : (s == 1 ? 2 : 0);
        }
    return count;
}

ScanReport verify_not_both_p_groups(unsigned long p, unsigned long max_scan_p) {
    if (p <= 3 || !is_prime_u64(p)) throw PreconditionError("p must be a prime > 3");
    if (p > max_scan_p) throw LimitExceededError("full scan p too large", long(max_scan_p));
    ScanReport rep;
    rep.p = p;
    auto qr = legendre_table(p);
    auto is_p_power = [&](Int n) {
        // N = p^e exactly, e >= 0; the trivial group counts as a p-group
        if (n < 1) return false;
        while (n % long(p) == 0) n /= long(p);
        return n == 1;
    };
    for (unsigned long a4 = 0; a4 < p; ++a4) {
        for (unsigned long a6 = 0; a6 < p; ++a6) {
            Curve E{p, a4, a6};
            if (E.is_singular()) continue;
            ++rep.curves_scanned;
            long long sum = 0;
            for (unsigned long x = 0; x < p; ++x) {
                unsigned long rhs = ((unsigned long long)x * x % p * x % p +
                                     (unsigned long long)a4 * x % p + a6) % p;
                sum += qr[rhs];
            }
            Int n1 = Int((long)p) + 1 + Int((long)sum);
            Int a = Int((long)p) + 1 - n1;
            Int n2 = n1 * (Int((long)p) + 1 + a);
            if (is_p_power(n1) && is_p_power(n2)) rep.violations.push_back(E);
        }
    }
    return rep;
}

std::optional<std::pair<long, long>> find_cm_trace(unsigned long p, unsigned long d) {
    if (!is_prime_u64(p)) throw PreconditionError("p must be prime");
    bool ok = false;
    for (unsigned long v : {1ul, 2ul, 3ul, 7ul, 11ul, 19ul, 43ul, 67ul, 163ul})
        if (v == d) ok = true;
    if (!ok) throw PreconditionError("d must be one of the nine class-number-1 values");
    long amax = long(std::sqrt(4.0 * double(p)));
    while (Int(amax + 1) * (amax + 1) <= 4 * Int((long)p)) ++amax;
    while (Int(amax) * amax > 4 * Int((long)p)) --amax;
    for (long aa = 0; aa <= amax; ++aa) {
        for (long a : {aa, -aa}) {
            Int rhs = 4 * Int((long)p) - Int(a) * a;  // = d b^2
            if (rhs < 0) continue;
            if (rhs % long(d) != 0) continue;
            Int b2 = rhs / long(d);
            Int b;
            if (is_perfect_square(b2, &b)) return std::make_pair(a, long(b.get_si()));
            if (a == 0) break;
        }
    }
    return std::nullopt;
}

DensityReport good_prime_density(std::uint64_t X, std::uint64_t max_x) {
    if (X > max_x) throw LimitExceededError("density scan X too large", long(max_x));
    DensityReport rep;
    if (X < 2) return rep;
    for (std::uint32_t p : primes_up_to(std::uint32_t(X))) {
        ++rep.count_all;
        for (long D : kClassNumberOneDiscs) {
            if (kronecker(Int(D), Int((long)p)) == 1) {
                ++rep.count_good;
                break;
            }
        }
    }
    rep.ratio = rep.count_all ? double(rep.count_good) / double(rep.count_all) : 0.0;
    return rep;
}

}  // namespace avc::ec
