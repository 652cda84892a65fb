#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "avcensus/census.hpp"
#include "avcensus/cl.hpp"
#include "avcensus/ec.hpp"
#include "avcensus/hermitian.hpp"
#include "avcensus/lattice.hpp"
#include "avcensus/numfield.hpp"
#include "avcensus/weil.hpp"
#include "avcensus/zlattice.hpp"

namespace py = pybind11;

namespace {

std::string int_str(const avc::Int& v) { return v.get_str(); }

py::tuple rat_tuple(const avc::Rat& r) {
    return py::make_tuple(r.get_num().get_str(), r.get_den().get_str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact census computations for abelian varieties over finite fields";

    py::register_exception<avc::PreconditionError>(m, "PreconditionError");
    py::register_exception<avc::InternalAssertionError>(m, "InternalAssertionError");

    m.def("weil_count", [](unsigned g, unsigned long q) {
        return int_str(avc::weil::enumerate_weil(g, q).count);
    }, py::arg("g"), py::arg("q"), "number of degree-2g q-Weil polynomials");

    m.def("weil_count_dual", [](unsigned g, unsigned long q) {
        return int_str(avc::weil::enumerate_weil_coefficient_space(g, q).count);
    }, py::arg("g"), py::arg("q"), "same count via the independent coefficient-space route");

    m.def("is_weil", [](unsigned g, unsigned long q, const std::vector<long>& a) {
        std::vector<avc::Int> ai(a.begin(), a.end());
        return avc::weil::is_weil(avc::weil::WeilPolynomial::make(g, q, ai));
    }, py::arg("g"), py::arg("q"), py::arg("a"));

    m.def("weil_interval_bound", [](unsigned g, unsigned long q) {
        return int_str(avc::weil::count_bounds(g, q).interval_bound);
    }, py::arg("g"), py::arg("q"));

    m.def("hilb_count", [](unsigned long ell, unsigned j) {
        return int_str(avc::lattice::hilb_count(ell, j));
    }, py::arg("ell"), py::arg("j"));

    m.def("partition_count", [](unsigned j) {
        return int_str(avc::lattice::partition_count(j));
    }, py::arg("j"));

    m.def("class_number", [](unsigned long d) { return avc::numfield::class_number(d); },
          py::arg("d"));

    m.def("class_number_one_scan",
          [](unsigned long limit) { return avc::numfield::class_number_one_scan(limit); },
          py::arg("limit"));

    m.def("minkowski_bound", [](unsigned n) { return int_str(avc::numfield::minkowski_bound(n)); },
          py::arg("n"));

    m.def("dirichlet_l_exact", [](long D, unsigned k) {
        auto v = avc::numfield::dirichlet_L_exact(avc::numfield::QuadCharacter{D}, k);
        return py::make_tuple(rat_tuple(v.rational), v.pi_power, v.sqrt_pow, v.abs_disc);
    }, py::arg("D"), py::arg("k"),
       "L(k, chi_D) as ((num, den), pi_power, sqrt_pow, |D|); D = 1 gives zeta(k)");

    m.def("hermitian_mass_formula", [](unsigned long d, unsigned n) {
        return rat_tuple(avc::hermitian::mass_formula(d, n).total);
    }, py::arg("d"), py::arg("n"));

    m.def("hermitian_mass_brute", [](unsigned long d, unsigned n) {
        return rat_tuple(avc::hermitian::mass_brute(d, n));
    }, py::arg("d"), py::arg("n"));

    m.def("hermitian_class_count", [](unsigned long d, unsigned n) {
        return avc::hermitian::enumerate_classes(d, n).size();
    }, py::arg("d"), py::arg("n"));

    m.def("z_unimodular_class_count", [](unsigned n) {
        return avc::zlattice::enumerate_unimodular(n).size();
    }, py::arg("n"));

    m.def("trivial_cokernel_density", [](unsigned g, unsigned long ell) {
        return rat_tuple(avc::cl::trivial_cokernel_density(g, ell));
    }, py::arg("g"), py::arg("ell"));

    m.def("cl_sample", [](unsigned g, unsigned long ell, unsigned k, std::vector<unsigned> n,
                          std::uint64_t trials, std::uint64_t seed, unsigned workers) {
        std::vector<std::vector<unsigned>> targets(n.size());
        auto est = avc::cl::joint_sample(g, ell, k, n, targets, trials, seed, workers);
        py::dict out;
        out["trials"] = est.trials;
        out["hits"] = est.hits;
        out["precision_insufficient"] = est.precision_insufficient;
        out["p_hat"] = est.p_hat;
        out["std_err"] = est.std_err;
        return out;
    }, py::arg("g"), py::arg("ell"), py::arg("k"), py::arg("n"), py::arg("trials"),
       py::arg("seed") = 42, py::arg("workers") = 1,
       "joint probability that every coker(1 - F^{n_j}) is trivial");

    m.def("ec_point_count", [](unsigned long p, unsigned long a4, unsigned long a6) {
        auto td = avc::ec::point_count(avc::ec::Curve{p, a4, a6});
        return py::make_tuple(int_str(td.n1), td.a, int_str(td.n2));
    }, py::arg("p"), py::arg("a4"), py::arg("a6"));

    m.def("ec_find_cm_trace", [](unsigned long p, unsigned long d) -> py::object {
        auto r = avc::ec::find_cm_trace(p, d);
        if (!r) return py::none();
        return py::make_tuple(r->first, r->second);
    }, py::arg("p"), py::arg("d"));

    m.def("ec_good_prime_density", [](std::uint64_t x) {
        auto r = avc::ec::good_prime_density(x);
        return py::make_tuple(r.count_good, r.count_all, r.ratio);
    }, py::arg("x"));

    m.def("census_report_json", [](unsigned long p, unsigned gmin, unsigned gmax) {
        return avc::census::to_json(avc::census::report(p, gmin, gmax));
    }, py::arg("p"), py::arg("g_min"), py::arg("g_max"));

    m.def("census_report_csv", [](unsigned long p, unsigned gmin, unsigned gmax) {
        return avc::census::to_csv(avc::census::report(p, gmin, gmax));
    }, py::arg("p"), py::arg("g_min"), py::arg("g_max"));
}
