#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dsq/boundstates.hpp"
#include "dsq/bogoliubov.hpp"
#include "dsq/couplings.hpp"
#include "dsq/dynamics.hpp"
#include "dsq/entanglement.hpp"
#include "dsq/error.hpp"
#include "dsq/gpe.hpp"
#include "dsq/model.hpp"
#include "dsq/scenario.hpp"

namespace py = pybind11;
using namespace dsq;

PYBIND11_MODULE(_dsq, m) {
    m.doc() = "Dark-soliton qubit entanglement simulator";
    m.attr("__version__") = DSQ_VERSION;

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

    py::enum_<WannierConvention>(m, "WannierConvention")
        .value("MainText", WannierConvention::MainText)
        .value("AppendixB", WannierConvention::AppendixB)
        .value("ExactPT", WannierConvention::ExactPT);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("nu", &ModelParams::nu)
        .def_readwrite("mass_ratio", &ModelParams::mass_ratio)
        .def_readwrite("wannier", &ModelParams::wannier)
        .def_readwrite("n0_xi", &ModelParams::n0_xi)
        .def_readwrite("physical_xi_m", &ModelParams::physical_xi_m)
        .def_readwrite("physical_mu_hz", &ModelParams::physical_mu_hz)
        .def_readwrite("physical_gamma_hz", &ModelParams::physical_gamma_hz)
        .def("validate", &ModelParams::validate)
        .def("alpha", &ModelParams::alpha)
        .def("omega0", &ModelParams::omega0);

    m.def("derive_nu", &derive_nu, py::arg("chi_over_g"), py::arg("mass_ratio"));
    m.def("qubit_gap", [](double nu, double mr) { return qubit_gap(nu, mr).omega0; }, py::arg("nu"),
          py::arg("mass_ratio"));

    m.def("pt_spectrum", [](double nu, double mr) {
        const auto s = pt_spectrum(nu, mr);
        py::dict d;
        d["energies"] = s.energies;
        d["count"] = s.count;
        d["qubit_ok"] = s.qubit_ok;
        return d;
    }, py::arg("nu"), py::arg("mass_ratio"));

    py::class_<WannierPair>(m, "WannierPair")
        .def_property_readonly("alpha", &WannierPair::alpha)
        .def_property_readonly("a0", &WannierPair::a0)
        .def_property_readonly("a1", &WannierPair::a1)
        .def_property_readonly("center", &WannierPair::center)
        .def("phi0", &WannierPair::phi0)
        .def("phi1", &WannierPair::phi1)
        .def("dipole_element", [](const WannierPair& p) { return dipole_element(p); });
    m.def("wannier_pair", &wannier_pair, py::arg("alpha"), py::arg("center") = 0.0);

    m.def("dispersion", [](double k) {
        const auto d = dispersion(k);
        return py::make_tuple(d.eps, d.group_velocity);
    }, py::arg("k"));
    m.def("resonant_wavevector", &resonant_wavevector, py::arg("omega0"));

    m.def("coupling_amplitude", [](int l, int mm, int i, int j, double k, double d, const ModelParams& p) {
        return coupling_amplitude({l, mm}, {i, j}, k, d, p);
    }, py::arg("l"), py::arg("m"), py::arg("i"), py::arg("j"), py::arg("k"), py::arg("d"), py::arg("params"));

    py::class_<RateSet>(m, "RateSet")
        .def_readonly("gamma", &RateSet::gamma)
        .def_readonly("gamma_over_omega0", &RateSet::gamma_over_omega0)
        .def_readonly("Gamma_over_gamma", &RateSet::Gamma_over_gamma)
        .def_readonly("eta_over_gamma", &RateSet::eta_over_gamma)
        .def_readonly("d", &RateSet::d)
        .def_readonly("k0", &RateSet::k0)
        .def_readonly("omega0", &RateSet::omega0)
        .def_readonly("eta_tail_estimate", &RateSet::eta_tail_estimate);
    m.def("rate_set", [](double d, const ModelParams& p) { return rate_set(d, p); }, py::arg("d"),
          py::arg("params") = ModelParams{});

    m.def("rwa_report", [](const ModelParams& p) {
        const auto r = rwa_report(p);
        py::dict d;
        d["g00_over_g01"] = r.g00_over_g01;
        d["g11_over_g01"] = r.g11_over_g01;
        d["gamma_over_omega0"] = r.gamma_over_omega0;
        d["k0"] = r.k0;
        d["degenerate"] = r.degenerate;
        return d;
    }, py::arg("params") = ModelParams{});

    py::enum_<Basis>(m, "Basis").value("Computational", Basis::Computational).value("Dicke", Basis::Dicke);

    py::class_<DensityMatrix4>(m, "DensityMatrix4")
        .def(py::init([](const Matrix4c& mat, Basis b) { return DensityMatrix4{mat, b}; }), py::arg("matrix"),
             py::arg("basis") = Basis::Computational)
        .def_readwrite("matrix", &DensityMatrix4::m)
        .def_readwrite("basis", &DensityMatrix4::basis)
        .def_static("projector", &DensityMatrix4::projector, py::arg("index"), py::arg("basis") = Basis::Computational);

    py::class_<Rates>(m, "Rates")
        .def(py::init([](double g, double G, double e) { return Rates{g, G, e}; }), py::arg("gamma") = 1.0,
             py::arg("Gamma") = 0.0, py::arg("eta") = 0.0)
        .def_readwrite("gamma", &Rates::gamma)
        .def_readwrite("Gamma", &Rates::Gamma)
        .def_readwrite("eta", &Rates::eta);
    m.def("rates_from", &rates_from);

    py::class_<DriveParams>(m, "DriveParams")
        .def(py::init([](double w, double det) {
            DriveParams d;
            d.omega_rabi = w;
            d.detuning = det;
            return d;
        }), py::arg("omega_rabi") = 0.0, py::arg("detuning") = 0.0)
        .def_readwrite("omega_rabi", &DriveParams::omega_rabi)
        .def_readwrite("detuning", &DriveParams::detuning)
        .def_readwrite("symmetric", &DriveParams::symmetric)
        .def_readwrite("omega_rabi_2", &DriveParams::omega_rabi_2);

    m.def("dicke_transform", &dicke_transform, py::arg("rho"), py::arg("target"));
    m.def("evolve", [](const DensityMatrix4& rho0, const Rates& r, const DriveParams& d, const std::vector<double>& t) {
        return evolve(rho0, r, d, t);
    }, py::arg("rho0"), py::arg("rates"), py::arg("drive"), py::arg("t_grid"));
    m.def("analytic_undriven", [](double ee, double ss, double aa, std::complex<double> sa, const Rates& r, double t) {
        return analytic_undriven({ee, ss, aa, sa}, r, t);
    }, py::arg("ee"), py::arg("ss"), py::arg("aa"), py::arg("sa"), py::arg("rates"), py::arg("t"));
    m.def("steady_state", [](const Rates& r, const DriveParams& d) {
        const auto s = steady_state(r, d);
        return py::make_tuple(s.rho, s.unique);
    }, py::arg("rates"), py::arg("drive"));

    m.def("concurrence", [](const DensityMatrix4& rho) { return concurrence(rho).value; }, py::arg("rho"));
    m.def("undriven_concurrence_formula", &undriven_concurrence_formula, py::arg("rates"), py::arg("t"));
    m.def("steady_concurrence_formula", &steady_concurrence_formula, py::arg("rates"), py::arg("omega_rabi"));

    m.def("relax_impurity", [](const ModelParams& p, std::size_t points, double length) {
        const Grid1D g{length, points, Boundary::BoxWalls, length - 8.0};
        const double origin[] = {0.0};
        const auto r = relax_impurity(imprint_solitons(g, origin, 1.0), p);
        py::dict d;
        d["energies"] = std::vector<double>{r.energies[0], r.energies[1]};
        d["bound"] = std::vector<bool>{r.bound[0], r.bound[1]};
        d["depth"] = r.depth;
        return d;
    }, py::arg("params") = ModelParams{}, py::arg("points") = 2048, py::arg("length") = 64.0);

    m.def("multi_soliton_experiment", [](std::size_t count, double spacing, double box, double t_final,
                                         std::size_t samples) {
        MultiSolitonOptions o;
        o.samples = samples;
        const auto tr = multi_soliton_experiment(count, spacing, box, t_final, o);
        py::dict d;
        d["t"] = tr.t;
        d["x"] = tr.x;
        d["lost"] = tr.lost;
        d["max_displacement"] = tr.max_displacement();
        return d;
    }, py::arg("count"), py::arg("spacing"), py::arg("box_length"), py::arg("t_final"), py::arg("samples") = 11);

    m.def("validate_params", [](const ModelParams& p) {
        const auto r = validate_params(p);
        py::dict d;
        for (const auto& [k, v] : r.entries) d[py::str(k)] = v;
        return d;
    }, py::arg("params") = ModelParams{});

    m.def("run_scenario", [](const std::string& name, const std::string& out_dir, long points) {
        RunOptions o;
        o.out_dir = out_dir;
        o.points = points;
        o.threads = 1;
        const auto r = run_scenario(preset(name), o);
        std::vector<std::string> files;
        for (const auto& f : r.files) files.push_back(f.string());
        return files;
    }, py::arg("name"), py::arg("out_dir"), py::arg("points") = 0);
}
