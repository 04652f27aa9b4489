#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "aep/cli.hpp"
#include "aep/entanglement.hpp"
#include "aep/entangling_power.hpp"
#include "aep/error.hpp"
#include "aep/io.hpp"
#include "aep/models.hpp"
#include "aep/simulator.hpp"
#include "aep/spectral.hpp"

namespace py = pybind11;
using namespace aep;

namespace {

BipartiteSplit to_split(const std::pair<std::size_t, std::size_t>& dims) { return {dims.first, dims.second}; }

// Family specs cross the boundary as JSON text, parsed with the CLI's schema.
HamiltonianFamily family_from_json(const std::string& text) {
    return io::build_family(io::parse_family_spec(io::Json::parse(text)));
}

py::dict power_to_dict(const PowerEstimate& e) {
    py::dict d;
    d["value"] = e.value;
    d["formula"] = to_string(e.formula);
    d["method"] = e.method();
    d["samples"] = e.samples;
    d["level"] = e.witness.level;
    d["lambda"] = e.witness.lambda;
    d["lambda_prime"] = e.witness.lambda_prime ? py::cast(*e.witness.lambda_prime) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_aep, m) {
    m.doc() = "Adiabatic entangling power of Hamiltonian families";
    m.attr("__version__") = io::version();

    auto base = py::register_exception<Error>(m, "AepError", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<DegeneracyEncountered>(m, "DegeneracyError", base.ptr());
    py::register_exception<NotHermitian>(m, "NotHermitian", base.ptr());
    py::register_exception<NotUnitary>(m, "NotUnitary", base.ptr());
    py::register_exception<NotAnEigenstate>(m, "NotAnEigenstate", base.ptr());

    m.def("entropy", [](const StateVector& psi, std::pair<std::size_t, std::size_t> dims) {
        return entropy(psi, to_split(dims));
    }, py::arg("psi"), py::arg("dims") = std::pair<std::size_t, std::size_t>{2, 2},
       "Entanglement entropy in bits of a pure bipartite state.");
    m.def("schmidt_spectrum", [](const StateVector& psi, std::pair<std::size_t, std::size_t> dims) {
        return schmidt_spectrum(psi, to_split(dims));
    }, py::arg("psi"), py::arg("dims") = std::pair<std::size_t, std::size_t>{2, 2});
    m.def("concurrence", &concurrence_2q, py::arg("psi"));

    m.def("connectible", [](const Operator& h0, const Operator& h1, double cluster_tol) {
        const auto d = is_adiabatically_connectible(h0, h1, cluster_tol);
        py::dict out;
        out["connectible"] = d.connectible;
        out["reason"] = d.describe();
        out["degeneracy_h0"] = d.d0;
        out["degeneracy_h1"] = d.d1;
        return out;
    }, py::arg("h0"), py::arg("h1"), py::arg("cluster_tol") = kDefaultClusterTol);
    m.def("connecting_family", [](const Operator& h0, const Operator& h1, std::vector<double> ts) {
        const auto family = build_connecting_family(h0, h1);
        std::vector<Operator> out;
        for (double t : ts) out.push_back(family.sample(t));
        return out;
    }, py::arg("h0"), py::arg("h1"), py::arg("t"), "H(t) of the connecting family at each t in [0, 1].");
    m.def("min_gap", py::overload_cast<const Operator&>(&min_gap), py::arg("h"));

    m.def("unitary_entangling_power", [](const Operator& u, std::pair<std::size_t, std::size_t> dims, int starts,
                                         std::uint64_t seed) {
        UnitaryPowerOptions opt;
        opt.starts = starts;
        opt.seed = seed;
        const auto w = unitary_entangling_power(u, to_split(dims), opt);
        return py::make_tuple(w.entropy, w.input, w.output);
    }, py::arg("u"), py::arg("dims") = std::pair<std::size_t, std::size_t>{2, 2}, py::arg("starts") = 8,
       py::arg("seed") = kDefaultSeed, "Returns (entropy, product input, output).");

    m.def("_power", [](const std::string& spec, int grid, bool refine, std::optional<std::size_t> level,
                       int jobs) {
        PowerOptions opt;
        opt.grid_per_axis = grid;
        opt.refine = refine;
        opt.level = level;
        opt.jobs = jobs;
        const auto family = family_from_json(spec);
        py::gil_scoped_release release;
        auto estimate = adiabatic_entangling_power(family, opt);
        py::gil_scoped_acquire acquire;
        return power_to_dict(estimate);
    }, py::arg("spec"), py::arg("grid") = 41, py::arg("refine") = false, py::arg("level") = py::none(),
       py::arg("jobs") = 1);
    m.def("_family_hamiltonian", [](const std::string& spec, std::vector<double> point) {
        return family_from_json(spec).evaluate(point);
    }, py::arg("spec"), py::arg("point"));

    m.def("example1_unitary", [](Complex mu, double mu_z) { return models::example1_unitary(mu, mu_z); },
          py::arg("mu"), py::arg("mu_z"));
    m.def("example2_unitary", [](double l1, double l2, double l3) {
        return models::example2_unitary({l1, l2, l3});
    }, py::arg("lambda1"), py::arg("lambda2"), py::arg("lambda3"));
    m.def("example2_max_concurrence", [](double l1, double l2, double l3) {
        return models::example2_max_concurrence({l1, l2, l3}).concurrence;
    }, py::arg("lambda1"), py::arg("lambda2"), py::arg("lambda3"));

    m.def("gate", [](double theta0, double radius, double duration, int steps, double lambda1, double lambda2,
                     double zz) {
        const auto r = synthesize_controlled_phase({lambda1, lambda2, zz}, gate_loop(theta0, radius, duration), steps);
        py::dict d;
        d["phases"] = r.phases;
        d["dynamical"] = r.dynamical;
        d["geometric"] = r.geometric;
        d["nontriviality"] = r.nontriviality;
        d["entangling"] = r.entangling;
        d["gate_error"] = r.gate_error;
        d["propagator"] = r.propagator;
        return d;
    }, py::arg("theta0") = 1.0471975511965976, py::arg("radius") = 0.3, py::arg("T") = 400.0,
       py::arg("steps") = 20000, py::arg("lambda1") = 2.0, py::arg("lambda2") = 1.0, py::arg("zz") = 0.0);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs one command line; returns (exit code, stdout, stderr).");
}
