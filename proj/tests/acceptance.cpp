// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion.  Exit code 0 only if every line passed.
// The rank-8 lattice search is opt-in: pass --run-rank8 (budget ~1 hour).

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "avcensus/census.hpp"
#include "avcensus/cl.hpp"
#include "avcensus/ec.hpp"
#include "avcensus/hermitian.hpp"
#include "avcensus/lattice.hpp"
#include "avcensus/numfield.hpp"
#include "avcensus/weil.hpp"
#include "avcensus/zlattice.hpp"

using namespace avc;

namespace {

int g_failures = 0;

void report_line(int criterion, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << detail
              << std::endl;
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// criterion 1: dual Weil enumerators, closed-form g=1 counts, bound dominance
void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream note;
    weil::EnumerateOptions opts;
    opts.threads = 4;
    for (unsigned g = 1; g <= 3; ++g) {
        for (unsigned long q : {2ul, 3ul, 4ul, 5ul}) {
            Int a = weil::enumerate_weil(g, q, opts).count;
            Int b = weil::enumerate_weil_coefficient_space(g, q, opts).count;
            if (a != b) {
                ok = false;
                note << " mismatch at (" << g << "," << q << ");";
            }
            Int interval = weil::count_bounds(g, q).interval_bound;
            if (interval < a) {
                ok = false;
                note << " interval bound fails at (" << g << "," << q << ");";
            }
        }
    }
    for (unsigned long q : {2ul, 3ul, 5ul, 7ul}) {
        Int n = weil::enumerate_weil(1, q, opts).count;
        Int expected = 2 * isqrt(Int(4 * (long)q)) + 1;  // 2 floor(2 sqrt q) + 1
        if (n != expected) {
            ok = false;
            note << " closed form fails at q=" << q << ";";
        }
    }
    // the documented (1,2) discrepancy: exact 5 exceeds the power-sum bound 2.83
    auto cb = weil::count_bounds(1, 2);
    bool flagged = cb.power_sum_bound_log2 < log2_of(Int(5));
    if (!flagged) ok = false;
    double secs = seconds_since(t0);
    if (secs >= 60.0) ok = false;
    note << " power_sum_bound(1,2)=" << cb.power_sum_bound_decimal.substr(0, 6)
         << " vs exact 5 (discrepancy reproduced); runtime " << secs << "s";
    report_line(1, ok, "dual Weil enumeration, g<=3, q in {2,3,4,5}" + note.str());
}

void criterion2() {
    bool ok = true;
    int equalities = 0;
    for (unsigned long ell : {2ul, 3ul}) {
        for (unsigned j = 0; j <= 4; ++j) {
            if (lattice::hilb_count(ell, j) != lattice::hilb_brute_force(ell, j)) ok = false;
            ++equalities;
        }
    }
    if (lattice::hilb_count(2, 3) != 7) ok = false;
    for (unsigned j = 0; j <= 64; ++j)
        if (!lattice::partition_bound_check(j)) ok = false;
    std::ostringstream note;
    note << "ideal-count identity on the full overlap domain (" << equalities
         << " equalities, (2,3)->7) and p(j) <= 2^j for j <= 64";
    report_line(2, ok, note.str());
}

void criterion3() {
    bool ok = true;
    int configs = 0;
    poly::Poly x = {Int(0), Int(1)};
    auto run = [&](poly::Poly f1, poly::Poly f2, unsigned long ell, unsigned prec) {
        auto r = lattice::isotypic_glue_count(f1, f2, ell, prec);
        ++configs;
        if (r.brute_count != r.formula_count) ok = false;
    };
    run(x, {Int(-1), Int(1)}, 2, 4);            // valuation 0
    run(x, {Int(-2), Int(1)}, 2, 4);            // valuation 1
    run(x, {Int(-4), Int(1)}, 2, 5);            // valuation 2
    run(x, {Int(-1), Int(1)}, 3, 4);            // valuation 0
    run(x, {Int(-3), Int(1)}, 3, 4);            // valuation 1
    run(x, {Int(-9), Int(1)}, 3, 5);            // valuation 2
    run({Int(1), Int(0), Int(1)}, {Int(3), Int(0), Int(1)}, 2, 4);  // 2-dim blocks, val 2
    run({Int(1), Int(1), Int(1)}, {Int(-1), Int(1)}, 3, 4);         // Res(x^2+x+1, x-1) = 3
    std::ostringstream note;
    note << "isotypic gluing brute force equals ell^delta on " << configs << " configurations";
    report_line(3, ok, note.str());
}

void criterion4() {
    bool ok = true;
    std::ostringstream note;
    for (unsigned long d : {1ul, 2ul, 3ul, 7ul, 11ul, 19ul, 43ul, 67ul, 163ul}) {
        auto audit = hermitian::mass_formula(d, 1);
        Rat brute = hermitian::mass_brute(d, 1);
        auto F = numfield::ImagQuadField::make(d);
        if (!(audit.total == brute && brute == Rat(1, long(F.w)) && audit.pi_cancelled)) {
            ok = false;
            note << " rank-1 failure at d=" << d << ";";
        }
    }
    for (unsigned long d : {1ul, 3ul}) {
        auto audit = hermitian::mass_formula(d, 2);
        if (!(audit.total == hermitian::mass_brute(d, 2) && audit.pi_cancelled)) {
            ok = false;
            note << " rank-2 failure at d=" << d << ";";
        }
    }
    report_line(4, ok,
                "mass formula = enumeration (rank 1: all nine fields = 1/w; rank 2: Q(i) and "
                "Q(sqrt(-3))), pi powers cancel exactly" +
                    note.str());
}

void criterion5(bool run_rank8) {
    bool ok = true;
    std::ostringstream note;
    for (unsigned n = 1; n <= 5; ++n) {
        auto cls = zlattice::enumerate_unimodular(n);
        if (cls.size() != 1) {
            ok = false;
            note << " rank " << n << " gave " << cls.size() << " classes;";
        }
    }
    note << " ranks 1..5: exactly one class each";
    if (run_rank8) {
        zlattice::ZEnumOptions opts;
        opts.allow_rank8 = true;
        opts.budget_seconds = 3600;
        auto t0 = std::chrono::steady_clock::now();
        auto cls = zlattice::enumerate_unimodular(8, opts);
        double secs = seconds_since(t0);
        Rat odd(0), even(0);
        for (const auto& c : cls) {
            Rat m = Rat(1) / Rat(zlattice::automorphism_count(c));
            (c.is_even() ? even : odd) += m;
        }
        odd.canonicalize();
        even.canonicalize();
        bool classes_ok = cls.size() == 2;
        bool odd_ok = odd == Rat(1) / Rat(zlattice::signed_permutation_order(8));
        bool even_ok = even == zlattice::mass_even_unimodular(8);
        if (!(classes_ok && odd_ok && even_ok)) ok = false;
        note << "; rank 8 (opt-in, " << secs << "s): " << cls.size()
             << " classes, odd mass " << odd << ", even mass " << even
             << (even_ok ? " = Minkowski-Siegel value" : " != Minkowski-Siegel value");
    } else {
        note << "; rank-8 search skipped (pass --run-rank8; ~minutes, 1h budget)";
    }
    report_line(5, ok, "unimodular Z-lattice classes:" + note.str());
}

void criterion6() {
    bool ok = true;
    std::ostringstream note;
    unsigned long mismatches = 0;
    for (unsigned long d = 1; d <= 10000; ++d) {
        if (!numfield::is_squarefree(d)) continue;
        if (numfield::class_number(d) != numfield::class_number_bruteforce(d)) {
            ok = false;
            ++mismatches;
        }
    }
    auto scan = numfield::class_number_one_scan(200);
    if (scan != std::vector<unsigned long>{1, 2, 3, 7, 11, 19, 43, 67, 163}) {
        ok = false;
        note << " scan-h1 wrong;";
    }
    unsigned long analytic_fail = 0;
    for (unsigned long d = 1; d <= 500; ++d) {
        if (!numfield::is_squarefree(d)) continue;
        auto F = numfield::ImagQuadField::make(d);
        Rat rhs = Rat(-long(F.w)) * numfield::generalized_bernoulli(1, F.D) / 2;
        rhs.canonicalize();
        if (Rat(long(F.h)) != rhs) {
            ok = false;
            ++analytic_fail;
        }
    }
    note << " dual counters d <= 10^4 (" << mismatches << " mismatches), analytic identity d <= "
            "500 ("
         << analytic_fail << " failures)";
    report_line(6, ok, "class numbers:" + note.str());
}

void criterion7() {
    bool ok = true;
    std::ostringstream note;
    double p40 = cl::trivial_cokernel_density(40, 2).get_d();
    if (std::abs(p40 - 0.2887880951) >= 1e-9) {
        ok = false;
        note << " partial product off at g=40;";
    }
    auto b3 = cl::pm1_avoidance_bound(3, 4, 20000, 11);
    if (std::llround(b3.bound * 1e5) != 12025) {
        ok = false;
        note << " 0.12025 bound not reproduced;";
    }
    auto est = cl::joint_sample(6, 2, 8, {1}, {{}}, 100000, 42, 4);
    double exact = cl::trivial_cokernel_density(6, 2).get_d();
    double sigma = std::sqrt(exact * (1 - exact) / 100000.0);
    if (std::abs(est.p_hat - exact) > 3 * sigma) {
        ok = false;
        note << " seeded Monte-Carlo outside 3 sigma;";
    }
    // mod-2 containment on 10^6 samples: identical F streams, hit counts equal
    auto both = cl::joint_sample(6, 2, 1, {1, 2}, {{}, {}}, 1000000, 2024, 4);
    auto sq = cl::joint_sample(6, 2, 1, {2}, {{}}, 1000000, 2024, 4);
    if (both.hits != sq.hits) {
        ok = false;
        note << " containment violated;";
    }
    note << " g=40 partial product 0.2887880951 (1e-9), bound 0.12025 (5 places), MC |"
         << est.p_hat << " - " << exact << "| <= 3 sigma, containment on 10^6 samples";
    report_line(7, ok, "Cohen-Lenstra densities:" + note.str());
}

void criterion8() {
    bool ok = true;
    std::ostringstream note;
    unsigned long violations = 0;
    for (auto p : primes_up_to(200)) {
        if (p < 5) continue;
        auto rep = ec::verify_not_both_p_groups(p);
        violations += rep.violations.size();
    }
    if (violations != 0) ok = false;
    auto dens = ec::good_prime_density(1000000);
    double target = 511.0 / 512.0;
    if (std::abs(dens.ratio - target) >= 0.002) {
        ok = false;
        note << " density off;";
    }
    unsigned long good = 0, total = 0;
    for (auto p : primes_up_to(10000)) {
        ++total;
        for (unsigned long d : {1ul, 2ul, 3ul, 7ul, 11ul, 19ul, 43ul, 67ul, 163ul}) {
            if (ec::find_cm_trace(p, d)) {
                ++good;
                break;
            }
        }
    }
    double frac = double(good) / double(total);
    if (frac < 0.99) ok = false;
    note << " scans 5<=p<=200: " << violations << " violations; density(10^6)=" << dens.ratio
         << " vs 511/512; CM traces for " << good << "/" << total << " primes <= 10^4";
    report_line(8, ok, "elliptic curve lemma scans:" + note.str());
}

void criterion9() {
    bool ok = true;
    std::ostringstream note;
    auto tot = census::total_unpolarized_bound(5, 2);
    if (tot.leading_coefficient != Rat(17, 2)) ok = false;
    if (numfield::minkowski_bound(2) != 48) ok = false;
    for (unsigned n = 1; n <= 8; ++n) {
        Int b = numfield::minkowski_bound(n);
        Int sp = pow_int(2ul, n) * factorial(n);
        if (b % sp != 0 || b < sp) ok = false;
    }
    std::mt19937 rng(424242);
    unsigned long tested = 0;
    try {
        for (int trial = 0; trial < 10000; ++trial) {
            census::FactorProfile prof;
            unsigned parts = 1 + rng() % 5;
            for (unsigned i = 0; i < parts; ++i)
                prof.factors.push_back({1 + rng() % 3, 1 + rng() % 500});
            auto idx = census::dominant_factor_test(prof);
            if (idx) {
                auto [deg, rank] = prof.factors[*idx];
                if (deg != 1 || 100ull * rank < 99ull * prof.g()) ok = false;
            }
            ++tested;
        }
    } catch (const InternalAssertionError&) {
        ok = false;
    }
    note << " 1/4 + 33/4 = 17/2 exact; bound(2) = 48 and bound(n) divisible by n! 2^n for n <= 8; "
         << tested << " fuzzed profiles, zero assertion failures";
    report_line(9, ok, "census identities:" + note.str());
}

// non-asserted trend reports the criteria reference
void trend_reports() {
    std::cout << "---- trend reports (informational) ----\n";
    for (unsigned long q : {2ul, 3ul}) {
        std::cout << "log(count)/((g^2/4) log q) at q=" << q << ":";
        weil::EnumerateOptions opts;
        opts.threads = 4;
        for (unsigned g = 1; g <= 3; ++g) {
            Int n = weil::enumerate_weil(g, q, opts).count;
            double ratio = std::log(n.get_d()) / ((g * g / 4.0) * std::log(double(q)));
            std::cout << " g=" << g << ": " << ratio;
        }
        std::cout << "\n";
    }
    std::cout << "class-number chain vs (2 sqrt p)^{C(2g,2)/2} leading exponent, p=2:";
    for (unsigned g : {2u, 4u, 8u}) {
        numfield::CMBoundInput f;
        f.degree = 2 * g;
        f.r1 = 0;
        f.r2 = g;
        f.abs_disc = Int(1);
        // cap |D_K| by (2 sqrt p)^{C(d,2)}
        mpf_class cap(2.0 * std::sqrt(2.0), 128);
        mpf_class pw;
        mpf_pow_ui(pw.get_mpf_t(), cap.get_mpf_t(), (unsigned long)binomial(2 * g, 2).get_ui());
        f.abs_disc = Int(pw);
        auto v = numfield::class_number_bound_chain({f});
        double lead = 0.5 * binomial(2 * g, 2).get_d() * std::log(2.0 * std::sqrt(2.0));
        std::cout << " g=" << g << ": " << v.ln_value / lead;
    }
    std::cout << "\n";
    std::cout << "log mass / (n^2 log n) for Z-lattices:";
    for (unsigned n : {2u, 3u, 4u, 5u}) {
        double lm = -std::log(zlattice::mass_brute(n).get_d());
        std::cout << " n=" << n << ": " << lm / (n * n * std::log(double(n)));
    }
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    bool run_rank8 = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--run-rank8") == 0) run_rank8 = true;
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5(run_rank8);
        criterion6();
        criterion7();
        criterion8();
        criterion9();
        trend_reports();
    } catch (const std::exception& e) {
        std::cout << "[FAIL] unexpected exception: " << e.what() << std::endl;
        return 1;
    }
    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
