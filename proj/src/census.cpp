#include "avcensus/census.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "avcensus/weil.hpp"

namespace avc::census {

const char* kCodeVersion = "avcensus-census-1";

double ExactBound::log2_value(unsigned long p) const {
    return log2_of(mantissa) + two_exp.get_d() + p_exp.get_d() * std::log2(double(p));
}

ExactBound ExactBound::times(const ExactBound& o) const {
    ExactBound r;
    r.mantissa = mantissa * o.mantissa;
    r.two_exp = two_exp + o.two_exp;
    r.p_exp = p_exp + o.p_exp;
    r.two_exp.canonicalize();
    r.p_exp.canonicalize();
    return r;
}

IsogenyBound isogeny_bound(unsigned g, unsigned long q) {
    if (g < 1) throw PreconditionError("g must be >= 1");
    IsogenyBound out;
    // (2g)^g q^{g(g+1)/4} = g^g * 2^g * q^{g(g+1)/4}
    out.bound.mantissa = pow_int(Int((long)g), g);
    out.bound.two_exp = Rat((long)g);
    out.bound.p_exp = Rat(Int((long)g) * (long)(g + 1), Int(4));
    out.bound.p_exp.canonicalize();
    out.log2 = out.bound.log2_value(q);
    if (g <= 2 && q <= 3) {
        out.exact_count = weil::enumerate_weil(g, q).count;
    }
    return out;
}

namespace {

// (2 sqrt p)^e as an ExactBound
ExactBound two_sqrt_p_pow(const Rat& e) {
    ExactBound b;
    b.two_exp = e;
    b.p_exp = e / 2;
    b.p_exp.canonicalize();
    return b;
}

// coefficient of g^2 in a quadratic polynomial value v(g) = c2 g^2 + c1 g:
// recovered exactly as rationals from two evaluations
Rat leading_coefficient(const Rat& v_of_g, const Rat& v_of_2g, const Rat& g) {
    // v(2g) - 2 v(g) = 2 c2 g^2
    Rat c2 = (v_of_2g - 2 * v_of_g) / (2 * g * g);
    c2.canonicalize();
    return c2;
}

Rat orbit_p_exp(const Rat& g) {
    // p-exponent of (2 sqrt p)^{4 C(2g,2)} = 2 C(2g,2) = 2g(2g-1)
    return 2 * g * (2 * g - 1);
}

}  // namespace

PerClassBound per_class_bound(unsigned g, unsigned long p) {
    if (g < 1 || p < 2) throw PreconditionError("need g >= 1, p >= 2");
    PerClassBound out;
    Rat gg((long)g);
    Rat e_orbit = 4 * Rat(binomial(2 * g, 2));
    out.orbit = two_sqrt_p_pow(e_orbit);
    out.stabilizer = two_sqrt_p_pow(e_orbit);
    out.class_term = two_sqrt_p_pow(gg * gg / 2);
    out.leading_orbit = leading_coefficient(orbit_p_exp(gg), orbit_p_exp(2 * gg), gg);
    out.leading_stabilizer = out.leading_orbit;
    out.leading_class = Rat(1, 4);  // p-exponent g^2/4 exactly
    out.leading_total = out.leading_orbit + out.leading_stabilizer + out.leading_class;
    out.leading_total.canonicalize();
    if (out.leading_total != Rat(33, 4))
        throw InternalAssertionError("per-class leading coefficients do not sum to 33/4");
    ExactBound total = out.orbit.times(out.stabilizer).times(out.class_term);
    out.log2 = total.log2_value(p);
    out.two_power_slack_log2 = total.two_exp.get_d();
    return out;
}

TotalBound total_unpolarized_bound(unsigned g, unsigned long p) {
    IsogenyBound iso = isogeny_bound(g, p);
    PerClassBound pc = per_class_bound(g, p);
    TotalBound out;
    out.bound = iso.bound.times(pc.orbit).times(pc.stabilizer).times(pc.class_term);
    out.leading_coefficient = Rat(1, 4) + pc.leading_total;
    out.leading_coefficient.canonicalize();
    if (out.leading_coefficient != Rat(17, 2))
        throw InternalAssertionError("1/4 + 33/4 failed to equal 17/2");
    out.log2 = out.bound.log2_value(p);
    return out;
}

SquarefreeBound squarefree_polarization_bound(unsigned g, unsigned long p) {
    if (g < 2) throw PreconditionError("squarefree polarization bound needs g >= 2");
    if (p < 2) throw PreconditionError("p must be >= 2");
    SquarefreeBound out;
    Rat e = 4 * Rat(binomial(g, 2)) + Rat(Int((long)g) * (long)g);
    out.bound = two_sqrt_p_pow(e);
    out.exponent_over_g2 = e / Rat(Int((long)g) * (long)g);
    out.exponent_over_g2.canonicalize();
    out.log2 = out.bound.log2_value(p);
    out.leading_term_only = true;
    return out;
}

double ppav_lower_bound(unsigned g) {
    if (g < 1) throw PreconditionError("g must be >= 1");
    return double(g) * double(g) * std::log(double(g));
}

ConvexityResult convexity_check(const std::vector<Rat>& x, const Rat& g, const Rat& eps) {
    if (!(Rat(1, 2) < eps && eps < 1)) throw PreconditionError("need 1/2 < eps < 1");
    Rat sum(0);
    for (const auto& xi : x) {
        if (xi < 0 || xi > eps * g) throw PreconditionError("need 0 <= x_i <= eps g");
        sum += xi;
    }
    if (sum != g) throw PreconditionError("coordinates must sum to g");
    ConvexityResult out;
    out.sum_squares = 0;
    for (const auto& xi : x) out.sum_squares += xi * xi;
    out.sum_squares.canonicalize();
    out.max_value = g * g * (eps * eps + (1 - eps) * (1 - eps));
    out.max_value.canonicalize();
    out.ok = out.sum_squares <= out.max_value;
    if (!out.ok)
        throw InternalAssertionError("convex maximum exceeded inside the feasible polytope");
    return out;
}

unsigned FactorProfile::g() const {
    unsigned s = 0;
    for (auto [deg, rank] : factors) s += deg * rank;
    return s;
}

std::optional<size_t> dominant_factor_test(const FactorProfile& profile) {
    if (profile.factors.empty()) throw PreconditionError("profile must be nonempty");
    for (auto [deg, rank] : profile.factors)
        if (deg < 1 || rank < 1) throw PreconditionError("profile entries must be positive");
    unsigned g = profile.g();
    double est = 0.0;
    for (auto [deg, rank] : profile.factors)
        est += double(deg) * double(rank) * double(rank) * std::log(double(rank));
    double threshold = 0.99 * double(g) * double(g) * std::log(double(g));
    if (est < threshold) return std::nullopt;
    for (size_t i = 0; i < profile.factors.size(); ++i) {
        auto [deg, rank] = profile.factors[i];
        // n_i >= 0.99 g checked in exact integers
        if (deg == 1 && 100ull * rank >= 99ull * g) return i;
    }
    throw InternalAssertionError("orbit estimate cleared the threshold with no dominant factor");
}

namespace {

std::string row_json(unsigned long p, unsigned g) {
    IsogenyBound iso = isogeny_bound(g, p);
    PerClassBound pc = per_class_bound(g, p);
    TotalBound tot = total_unpolarized_bound(g, p);
    std::ostringstream os;
    os << "{\"p\": " << p << ", \"g\": " << g << ", \"log_base\": 2";
    os << ", \"isogeny\": {\"log2\": " << format_double(iso.log2)
       << ", \"p_exp\": \"" << iso.bound.p_exp << "\", \"two_exp\": \"" << iso.bound.two_exp
       << "\", \"mantissa\": \"" << iso.bound.mantissa << "\"";
    if (iso.exact_count) os << ", \"exact_count\": \"" << *iso.exact_count << "\"";
    os << "}";
    os << ", \"per_class\": {\"log2\": " << format_double(pc.log2)
       << ", \"orbit_log2\": " << format_double(pc.orbit.log2_value(p))
       << ", \"stabilizer_log2\": " << format_double(pc.stabilizer.log2_value(p))
       << ", \"class_term_log2\": " << format_double(pc.class_term.log2_value(p))
       << ", \"two_power_slack_log2\": " << format_double(pc.two_power_slack_log2)
       << ", \"leading_coefficients\": [\"" << pc.leading_orbit << "\", \""
       << pc.leading_stabilizer << "\", \"" << pc.leading_class << "\"], \"leading_total\": \""
       << pc.leading_total << "\"}";
    os << ", \"total_unpolarized\": {\"log2\": " << format_double(tot.log2)
       << ", \"p_exp\": \"" << tot.bound.p_exp << "\", \"leading_coefficient\": \""
       << tot.leading_coefficient << "\"}";
    if (g >= 2) {
        SquarefreeBound sf = squarefree_polarization_bound(g, p);
        os << ", \"squarefree_polarization\": {\"log2\": " << format_double(sf.log2)
           << ", \"exponent_over_g2\": \"" << sf.exponent_over_g2
           << "\", \"leading_term_only\": true, \"paper_constant_unpinned\": true}";
    }
    os << ", \"ppav_lower_leading\": {\"ln\": " << format_double(ppav_lower_bound(g))
       << ", \"log_base\": \"e\"}";
    os << "}";
    return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// content-addressed row cache with atomic write-temp-then-rename
std::string cached_row(unsigned long p, unsigned g, const std::string& cache_dir) {
    if (cache_dir.empty()) return row_json(p, g);
    namespace fs = std::filesystem;
    std::ostringstream key;
    key << kCodeVersion << "|" << p << "|" << g;
    fs::path dir(cache_dir);
    fs::create_directories(dir);
    fs::path file = dir / ("row_" + std::to_string(fnv1a(key.str())) + ".json");
    if (fs::exists(file)) {
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        if (buf.str().size() > 2) return buf.str();
    }
    std::string body = row_json(p, g);
    fs::path tmp = file;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        out << body;
    }
    fs::rename(tmp, file);
    return body;
}

}  // namespace

CensusReport report(unsigned long p, unsigned g_min, unsigned g_max, const std::string& cache_dir,
                    unsigned threads) {
    if (!is_prime_u64(p)) throw PreconditionError("p must be prime");
    if (g_min < 1) throw PreconditionError("g_min must be >= 1");
    CensusReport rep;
    rep.p = p;
    rep.g_min = g_min;
    rep.g_max = g_max;
    if (g_max < g_min) return rep;  // header-only output
    std::vector<unsigned> gs;
    for (unsigned g = g_min; g <= g_max; ++g) gs.push_back(g);
    std::vector<std::string> bodies(gs.size());
    if (threads <= 1) {
        for (size_t i = 0; i < gs.size(); ++i) bodies[i] = cached_row(p, gs[i], cache_dir);
    } else {
        std::vector<std::future<std::string>> futs;
        for (size_t i = 0; i < gs.size(); ++i)
            futs.push_back(std::async(std::launch::async,
                                      [&, i] { return cached_row(p, gs[i], cache_dir); }));
        for (size_t i = 0; i < gs.size(); ++i) bodies[i] = futs[i].get();
    }
    for (size_t i = 0; i < gs.size(); ++i) {
        unsigned g = gs[i];
        CensusRow row;
        row.g = g;
        IsogenyBound iso = isogeny_bound(g, p);
        PerClassBound pc = per_class_bound(g, p);
        TotalBound tot = total_unpolarized_bound(g, p);
        row.isogeny_log2 = iso.log2;
        row.per_class_log2 = pc.log2;
        row.total_log2 = tot.log2;
        row.squarefree_log2 = g >= 2 ? squarefree_polarization_bound(g, p).log2 : 0.0;
        row.ppav_leading_ln = ppav_lower_bound(g);
        std::ostringstream e1, e2, e3;
        e1 << iso.bound.p_exp;
        Rat pcp = pc.orbit.p_exp + pc.stabilizer.p_exp + pc.class_term.p_exp;
        pcp.canonicalize();
        e2 << pcp;
        e3 << tot.bound.p_exp;
        row.isogeny_p_exp = e1.str();
        row.per_class_p_exp = e2.str();
        row.total_p_exp = e3.str();
        // exactness of the exponent bookkeeping: total = isogeny + per-class
        if (tot.bound.p_exp != iso.bound.p_exp + pcp)
            throw InternalAssertionError("total p-exponent is not the exact sum of components");
        row.json = bodies[i];
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string to_csv(const CensusReport& r) {
    std::ostringstream os;
    os << "p,g,isogeny_log2,per_class_log2,total_unpolarized_log2,squarefree_polarization_log2,"
          "ppav_leading_ln,isogeny_p_exp,per_class_p_exp,total_p_exp\n";
    for (const auto& row : r.rows) {
        os << r.p << "," << row.g << "," << format_double(row.isogeny_log2) << ","
           << format_double(row.per_class_log2) << "," << format_double(row.total_log2) << ","
           << format_double(row.squarefree_log2) << "," << format_double(row.ppav_leading_ln)
           << "," << row.isogeny_p_exp << "," << row.per_class_p_exp << "," << row.total_p_exp
           << "\n";
    }
    return os.str();
}

std::string to_json(const CensusReport& r) {
    std::ostringstream os;
    os << "{\"p\": " << r.p << ", \"code_version\": \"" << kCodeVersion << "\", \"rows\": [";
    for (size_t i = 0; i < r.rows.size(); ++i) {
        if (i) os << ",";
        os << "\n  " << r.rows[i].json;
    }
    os << "\n]}\n";
    return os.str();
}

}  // namespace avc::census
