#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "avcensus/census.hpp"
#include "avcensus/cl.hpp"
#include "avcensus/config.hpp"
#include "avcensus/ec.hpp"
#include "avcensus/hermitian.hpp"
#include "avcensus/lattice.hpp"
#include "avcensus/numfield.hpp"
#include "avcensus/weil.hpp"
#include "avcensus/zlattice.hpp"

using nlohmann::json;

namespace {

struct Global {
    std::string config_path;
    std::string cache_dir;
    std::string format = "json";
    unsigned threads = 1;
    avc::Config config;

    void finalize() {
        if (!config_path.empty()) config = avc::Config::load(config_path);
        if (cache_dir.empty() && config.has("cache_dir")) cache_dir = config.get_string("cache_dir");
        if (threads == 0) threads = 1;
    }
};

std::string rat_json(const avc::Rat& r) {
    std::ostringstream os;
    os << "{\"num\": \"" << r.get_num() << "\", \"den\": \"" << r.get_den() << "\"}";
    return os.str();
}

void emit(const std::string& s) { std::cout << s << std::endl; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact census computations for abelian varieties over finite fields"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Global G;
    app.add_option("--config", G.config_path, "key=value configuration file");
    app.add_option("--cache-dir", G.cache_dir, "directory for content-addressed result caching");
    app.add_option("--format", G.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", G.threads, "worker threads where supported");
    // runs after parsing, before the subcommand callbacks fire
    app.parse_complete_callback([&] { G.finalize(); });

    // ---- weil ----
    auto* weil_cmd = app.add_subcommand("weil", "q-Weil polynomial enumeration and bounds");
    auto* weil_count = weil_cmd->add_subcommand("count", "count degree-2g q-Weil polynomials");
    unsigned wg = 1;
    unsigned long wq = 2;
    std::string weil_list_path;
    weil_count->add_option("--g", wg, "half-degree")->required();
    weil_count->add_option("--q", wq, "prime power")->required();
    weil_count->add_option("--list", weil_list_path, "write the polynomial list as JSON");
    weil_count->callback([&] {
        avc::weil::EnumerateOptions opts;
        opts.keep_list = !weil_list_path.empty();
        opts.threads = G.threads;
        opts.max_g = unsigned(G.config.get_long("weil.max_g"));
        opts.max_q = (unsigned long)G.config.get_long("weil.max_q");
        auto res = avc::weil::enumerate_weil(wg, wq, opts);
        auto res2 = avc::weil::enumerate_weil_coefficient_space(wg, wq, opts);
        if (res.count != res2.count)
            throw avc::InternalAssertionError("dual enumerators disagree");
        auto cb = avc::weil::count_bounds(wg, wq);
        std::ostringstream os;
        os << "{\"g\": " << wg << ", \"q\": " << wq << ", \"count\": \"" << res.count
           << "\", \"power_sum_bound\": " << cb.power_sum_bound_decimal
           << ", \"power_sum_bound_log2\": " << avc::format_double(cb.power_sum_bound_log2)
           << ", \"interval_bound\": \"" << cb.interval_bound << "\"}";
        emit(os.str());
        if (!weil_list_path.empty()) {
            std::ofstream out(weil_list_path);
            out << avc::weil::to_json(res.list);
        }
    });

    // ---- lattice ----
    auto* lat_cmd = app.add_subcommand("lattice", "stable-lattice and ideal counting");
    auto* lat_hilb = lat_cmd->add_subcommand("hilb", "colength-j ideal count of the series ring");
    unsigned long lh_ell = 2;
    unsigned lh_j = 0;
    lat_hilb->add_option("--ell", lh_ell, "prime")->required();
    lat_hilb->add_option("--j", lh_j, "colength")->required();
    lat_hilb->callback([&] {
        auto c = avc::lattice::hilb_count(lh_ell, lh_j,
                                          unsigned(G.config.get_long("hilb.max_j")));
        std::ostringstream os;
        os << "{\"ell\": " << lh_ell << ", \"j\": " << lh_j << ", \"count\": \"" << c << "\"}";
        emit(os.str());
    });
    auto* lat_stable = lat_cmd->add_subcommand("stable", "count stable sublattices per colength");
    std::string matrix_path;
    unsigned max_colength = 1;
    lat_stable->add_option("--matrix", matrix_path, "matrix JSON {ell,k,n,rows}")->required();
    lat_stable->add_option("--max-colength", max_colength, "largest colength")->required();
    lat_stable->callback([&] {
        std::ifstream in(matrix_path);
        if (!in) throw avc::PreconditionError("cannot open matrix file: " + matrix_path);
        json j = json::parse(in);
        avc::lattice::TruncatedMatrix gamma;
        gamma.ell = j.at("ell").get<unsigned long>();
        gamma.k = j.at("k").get<unsigned>();
        gamma.n = j.at("n").get<unsigned>();
        for (const auto& row : j.at("rows"))
            gamma.entries.push_back(row.get<std::vector<std::int64_t>>());
        auto counts = avc::lattice::count_stable_sublattices(
            gamma, max_colength, unsigned(G.config.get_long("lattice.max_cells")));
        std::ostringstream os;
        os << "{\"ell\": " << gamma.ell << ", \"k\": " << gamma.k << ", \"n\": " << gamma.n
           << ", \"counts\": {";
        bool first = true;
        for (const auto& [c, cnt] : counts) {
            if (!first) os << ", ";
            first = false;
            os << "\"" << c << "\": \"" << cnt << "\"";
        }
        os << "}}";
        emit(os.str());
    });

    // ---- field ----
    auto* field_cmd = app.add_subcommand("field", "imaginary quadratic field invariants");
    auto* field_classno = field_cmd->add_subcommand("classno", "class number of Q(sqrt(-d))");
    unsigned long fd = 1;
    field_classno->add_option("--d", fd, "squarefree d")->required();
    field_classno->callback([&] {
        auto F = avc::numfield::ImagQuadField::make(fd);
        std::ostringstream os;
        os << "{\"d\": " << fd << ", \"D\": " << F.D << ", \"h\": " << F.h << ", \"w\": " << F.w
           << "}";
        emit(os.str());
    });
    auto* field_scan = field_cmd->add_subcommand("scan-h1", "squarefree d with class number 1");
    unsigned long scan_limit = 200;
    field_scan->add_option("--limit", scan_limit, "scan bound")->required();
    field_scan->callback([&] {
        auto ds = avc::numfield::class_number_one_scan(scan_limit);
        std::cout << "d\n";
        for (auto d : ds) std::cout << d << "\n";
    });
    auto* field_mink = field_cmd->add_subcommand("minkowski", "finite-subgroup bound for GL_n(Z)");
    unsigned mink_n = 1;
    field_mink->add_option("--n", mink_n, "rank")->required();
    field_mink->callback([&] {
        std::ostringstream os;
        os << "{\"n\": " << mink_n << ", \"bound\": \"" << avc::numfield::minkowski_bound(mink_n)
           << "\"}";
        emit(os.str());
    });

    // ---- hermitian ----
    auto* herm_cmd = app.add_subcommand("hermitian", "unimodular hermitian lattice classes");
    auto* herm_classes = herm_cmd->add_subcommand("classes", "isometry class representatives");
    unsigned long hd = 1;
    unsigned hrank = 1;
    herm_classes->add_option("--field", hd, "squarefree d of Q(sqrt(-d))")->required();
    herm_classes->add_option("--rank", hrank, "lattice rank")->required();
    herm_classes->callback([&] {
        auto cls = avc::hermitian::enumerate_classes(hd, hrank);
        emit(avc::hermitian::to_json(cls));
    });
    auto* herm_mass = herm_cmd->add_subcommand("mass", "Siegel mass by formula and/or enumeration");
    std::string mass_method = "both";
    herm_mass->add_option("--field", hd, "squarefree d of Q(sqrt(-d))")->required();
    herm_mass->add_option("--rank", hrank, "lattice rank")->required();
    herm_mass->add_option("--method", mass_method, "formula|brute|both")
        ->check(CLI::IsMember({"formula", "brute", "both"}));
    herm_mass->callback([&] {
        std::ostringstream os;
        os << "{\"d\": " << hd << ", \"rank\": " << hrank;
        if (mass_method == "formula" || mass_method == "both") {
            auto audit = avc::hermitian::mass_formula(hd, hrank);
            os << ", \"formula\": " << rat_json(audit.total) << ", \"genera\": [";
            for (size_t i = 0; i < audit.genera.size(); ++i) {
                if (i) os << ", ";
                os << "{\"norm_gcd\": " << audit.genera[i].norm_gcd << ", \"mass\": "
                   << rat_json(audit.genera[i].mass) << ", \"ramified_beta\": "
                   << rat_json(audit.genera[i].ramified_beta) << ", \"beta_source\": \""
                   << audit.genera[i].beta_source << "\"}";
            }
            os << "]";
        }
        if (mass_method == "brute" || mass_method == "both") {
            os << ", \"brute\": " << rat_json(avc::hermitian::mass_brute(hd, hrank));
        }
        os << "}";
        emit(os.str());
    });
    auto* herm_cal = herm_cmd->add_subcommand("calibrate", "re-derive ramified local densities");
    unsigned cal_rank = 2;
    std::string cal_out;
    herm_cal->add_option("--max-rank", cal_rank, "calibrate ranks 1..max");
    herm_cal->add_option("--out", cal_out, "write the fixture JSON here");
    herm_cal->callback([&] {
        auto rows = avc::hermitian::calibrate(cal_rank);
        std::string body = avc::hermitian::calibration_to_json(rows);
        if (!cal_out.empty()) {
            std::ofstream out(cal_out);
            out << body;
        }
        emit(body);
    });
    auto* herm_z = herm_cmd->add_subcommand("zclasses", "unimodular Z-lattice classes");
    unsigned zrank = 1;
    bool allow8 = false;
    double budget = 3600;
    herm_z->add_option("--rank", zrank, "lattice rank")->required();
    herm_z->add_flag("--rank8", allow8, "opt into the rank-8 minimum-2 search");
    herm_z->add_option("--budget", budget, "search budget in seconds");
    herm_z->callback([&] {
        avc::zlattice::ZEnumOptions opts;
        opts.allow_rank8 = allow8;
        opts.budget_seconds = budget;
        auto cls = avc::zlattice::enumerate_unimodular(zrank, opts);
        std::ostringstream os;
        os << "{\"rank\": " << zrank << ", \"classes\": " << cls.size() << ", \"mass\": "
           << rat_json(avc::zlattice::mass_brute(zrank, opts)) << ", \"even_classes\": [";
        bool first = true;
        for (const auto& c : cls) {
            if (c.is_even()) {
                if (!first) os << ", ";
                first = false;
                os << "\"" << c.key() << "\"";
            }
        }
        os << "]}";
        emit(os.str());
    });

    // ---- cl ----
    auto* cl_cmd = app.add_subcommand("cl", "cokernel statistics of random matrices");
    auto* cl_sample = cl_cmd->add_subcommand("sample", "joint cokernel sampling");
    unsigned cg = 6, ck = 8;
    unsigned long cell = 2;
    std::string cl_ns = "1";
    std::string cl_targets;
    std::uint64_t trials = 100000, seed = 42;
    unsigned workers = 1;
    cl_sample->add_option("--g", cg, "matrix dimension")->required();
    cl_sample->add_option("--ell", cell, "prime")->required();
    cl_sample->add_option("--k", ck, "working precision ell^k")->required();
    cl_sample->add_option("--n", cl_ns, "comma-separated exponents, e.g. 1,2")->required();
    cl_sample->add_option("--targets", cl_targets,
                          "JSON array of exponent profiles, default all trivial");
    cl_sample->add_option("--trials", trials, "sample count")->required();
    cl_sample->add_option("--seed", seed, "PRNG seed");
    cl_sample->add_option("--workers", workers, "parallel substreams");
    cl_sample->callback([&] {
        std::vector<unsigned> ns;
        std::stringstream ss(cl_ns);
        std::string tok;
        while (std::getline(ss, tok, ',')) ns.push_back(unsigned(std::stoul(tok)));
        std::vector<std::vector<unsigned>> targets(ns.size());
        if (!cl_targets.empty()) {
            json t = json::parse(cl_targets);
            targets.clear();
            for (const auto& prof : t) targets.push_back(prof.get<std::vector<unsigned>>());
        }
        auto est = avc::cl::joint_sample(cg, cell, ck, ns, targets, trials, seed,
                                         workers ? workers : G.threads);
        emit(avc::cl::to_json(est));
    });

    // ---- ec ----
    auto* ec_cmd = app.add_subcommand("ec", "elliptic curve scans over prime fields");
    auto* ec_scan = ec_cmd->add_subcommand("scan-lemma", "group orders are never both p-powers");
    unsigned long pmax = 200;
    ec_scan->add_option("--p-max", pmax, "scan all primes 5..p-max")->required();
    ec_scan->callback([&] {
        std::cout << "p,curves_scanned,violations\n";
        for (auto p : avc::primes_up_to(std::uint32_t(pmax))) {
            if (p < 5) continue;
            auto rep = avc::ec::verify_not_both_p_groups(
                p, (unsigned long)G.config.get_long("ec.max_scan_p"));
            std::cout << rep.p << "," << rep.curves_scanned << "," << rep.violations.size()
                      << "\n";
            if (!rep.violations.empty()) throw avc::InternalAssertionError("p-group pair found");
        }
    });
    auto* ec_density = ec_cmd->add_subcommand("density", "density of good primes");
    std::uint64_t dx = 1000000;
    ec_density->add_option("--x", dx, "upper bound")->required();
    ec_density->callback([&] {
        auto rep = avc::ec::good_prime_density(
            dx, (std::uint64_t)G.config.get_long("ec.max_density_x"));
        std::cout << "x,count_good,count_all,ratio\n";
        std::cout << dx << "," << rep.count_good << "," << rep.count_all << ","
                  << avc::format_double(rep.ratio) << "\n";
    });
    auto* ec_cm = ec_cmd->add_subcommand("cm", "solve a^2 - 4p = -d b^2");
    unsigned long cp = 2, cd = 7;
    ec_cm->add_option("--p", cp, "prime")->required();
    ec_cm->add_option("--d", cd, "one of the nine class-number-1 values")->required();
    ec_cm->callback([&] {
        auto sol = avc::ec::find_cm_trace(cp, cd);
        std::cout << "p,d,a,b\n";
        if (sol)
            std::cout << cp << "," << cd << "," << sol->first << "," << sol->second << "\n";
        else
            std::cout << cp << "," << cd << ",," << "\n";
    });

    // ---- census ----
    auto* census_cmd = app.add_subcommand("census", "assembled bound reports");
    auto* census_report = census_cmd->add_subcommand("report", "per-g bound rows");
    unsigned long rp = 2;
    unsigned gmin = 1, gmax = 5;
    census_report->add_option("--p", rp, "prime")->required();
    census_report->add_option("--g-min", gmin, "first dimension")->required();
    census_report->add_option("--g-max", gmax, "last dimension")->required();
    census_report->callback([&] {
        auto rep = avc::census::report(rp, gmin, gmax, G.cache_dir, G.threads);
        if (G.format == "csv")
            std::cout << avc::census::to_csv(rep);
        else
            std::cout << avc::census::to_json(rep);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const avc::InternalAssertionError& e) {
        std::cerr << "internal assertion: " << e.what() << "\n";
        return 3;
    } catch (const avc::PrecisionInsufficientError& e) {
        std::cerr << "precision insufficient: " << e.what() << "\n";
        return 2;
    } catch (const avc::PreconditionError& e) {
        std::cerr << "precondition violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
