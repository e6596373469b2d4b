// Python bindings for the main cavity operations.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kgc/bessel_im.hpp"
#include "kgc/cavity_states.hpp"
#include "kgc/observables.hpp"
#include "kgc/spectral.hpp"

namespace py = pybind11;
using namespace kgc;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Klein-Gordon particle in a uniformly expanding cavity";

    py::register_exception<Error>(m, "KgcError");

    py::class_<PhysicalConfig>(m, "PhysicalConfig")
        .def(py::init<>())
        .def_readwrite("mass", &PhysicalConfig::mass)
        .def_readwrite("L0", &PhysicalConfig::L0)
        .def_readwrite("beta", &PhysicalConfig::beta)
        .def_readwrite("c", &PhysicalConfig::c)
        .def_readwrite("hbar", &PhysicalConfig::hbar)
        .def("lambda_c", &PhysicalConfig::lambda_c)
        .def("validate", &PhysicalConfig::validate);

    py::enum_<Branch>(m, "Branch")
        .value("particle", Branch::particle)
        .value("antiparticle", Branch::antiparticle);

    py::class_<ModeData>(m, "ModeData")
        .def_static("make", &ModeData::make, py::arg("cfg"), py::arg("n"), py::arg("branch"))
        .def_readonly("n", &ModeData::n)
        .def_readonly("branch", &ModeData::branch)
        .def_readonly("k_n", &ModeData::k_n)
        .def_readonly("p_n", &ModeData::p_n)
        .def_readonly("E_n", &ModeData::E_n);

    py::class_<bessel::AsymptoticPolicy>(m, "AsymptoticPolicy")
        .def(py::init<>())
        .def_readwrite("max_terms", &bessel::AsymptoticPolicy::max_terms)
        .def_readwrite("regime_threshold", &bessel::AsymptoticPolicy::regime_threshold)
        .def_readwrite("precision_bits", &bessel::AsymptoticPolicy::precision_bits)
        .def_readwrite("accuracy_target", &bessel::AsymptoticPolicy::accuracy_target);

    py::class_<ComplexSample>(m, "ComplexSample")
        .def_readonly("value", &ComplexSample::value)
        .def_readonly("dt", &ComplexSample::dt)
        .def_readonly("dx", &ComplexSample::dx)
        .def_readonly("t", &ComplexSample::t)
        .def_readonly("x", &ComplexSample::x);

    py::class_<SpectralExpansion>(m, "SpectralExpansion")
        .def_readonly("c", &SpectralExpansion::c)
        .def_readonly("n_max", &SpectralExpansion::n_max)
        .def_readonly("grid_points", &SpectralExpansion::grid_points)
        .def_readonly("completeness", &SpectralExpansion::completeness);

    py::class_<MovingStateEvaluator>(m, "MovingState")
        .def(py::init<const PhysicalConfig&, const ModeData&, const bessel::AsymptoticPolicy&>())
        .def("__call__", &MovingStateEvaluator::operator(), py::arg("t"), py::arg("x"))
        .def_property_readonly("norm_constant", &MovingStateEvaluator::norm_constant);

    m.def("wall_position", &wall_position, py::arg("cfg"), py::arg("t"));
    m.def("z_arg", &z_arg, py::arg("cfg"), py::arg("t"), py::arg("x"));
    m.def("phase_phi", &phase_phi, py::arg("cfg"), py::arg("mode"), py::arg("t"), py::arg("x"));
    m.def("phi_static", &phi_static, py::arg("cfg"), py::arg("mode"), py::arg("t"), py::arg("x"));
    m.def("mode_velocity", &mode_velocity, py::arg("cfg"), py::arg("mode"));
    m.def("schrodinger_moving", &schrodinger_moving, py::arg("cfg"), py::arg("n"), py::arg("t"),
          py::arg("x"));
    m.def("kg_density", &kg_density, py::arg("sample"), py::arg("cfg"));
    m.def("kg_current", &kg_current, py::arg("sample"), py::arg("cfg"));
    m.def(
        "expand_initial_state",
        [](const PhysicalConfig& cfg, int n_max, int grid_points,
           const bessel::AsymptoticPolicy& pol) {
            return expand_initial_state(cfg, n_max, grid_points, pol);
        },
        py::arg("cfg"), py::arg("n_max"), py::arg("grid_points"),
        py::arg("policy") = bessel::AsymptoticPolicy{});
    m.def(
        "antiparticle_overlaps",
        [](const PhysicalConfig& cfg, int n_max, int grid_points,
           const bessel::AsymptoticPolicy& pol) {
            return antiparticle_overlaps(cfg, n_max, grid_points, pol);
        },
        py::arg("cfg"), py::arg("n_max"), py::arg("grid_points"),
        py::arg("policy") = bessel::AsymptoticPolicy{});
    m.def("evolve_static", &evolve_static, py::arg("expansion"), py::arg("cfg"), py::arg("t"),
          py::arg("x"));
    m.def("oscillation_estimate", &oscillation_estimate, py::arg("cfg"));
    m.def("truncation_estimate", &truncation_estimate, py::arg("cfg"), py::arg("safety") = 4.0);
    m.def(
        "scaled_jt_yt",
        [](double nu, double z, const bessel::AsymptoticPolicy& pol) {
            auto [jt, yt] =
                bessel::scaled_jt_yt(bessel::Order(nu, bessel::BranchSign::positive), z, pol);
            return py::make_tuple(jt.value.real(), yt.value.real(), jt.abs_error);
        },
        py::arg("nu"), py::arg("z"), py::arg("policy") = bessel::AsymptoticPolicy{});
    m.def(
        "j_imag_scaled",
        [](double nu, double z, const bessel::AsymptoticPolicy& pol, bool negative) {
            auto r = bessel::j_imag(
                bessel::Order(nu, negative ? bessel::BranchSign::negative
                                           : bessel::BranchSign::positive),
                z, pol, bessel::Scaling::scaled);
            return py::make_tuple(r.value, r.abs_error);
        },
        py::arg("nu"), py::arg("z"), py::arg("policy") = bessel::AsymptoticPolicy{},
        py::arg("negative_branch") = false);
    m.def(
        "precision_diagnostic",
        [](double nu, double z, const bessel::AsymptoticPolicy& pol, bool extended) {
            return bessel::precision_diagnostic(
                bessel::Order(nu, bessel::BranchSign::positive), z, pol, extended);
        },
        py::arg("nu"), py::arg("z"), py::arg("policy"), py::arg("extended") = false);
}
