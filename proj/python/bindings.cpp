#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rtstab/dispersion.hpp"
#include "rtstab/grid.hpp"
#include "rtstab/mode_profile.hpp"
#include "rtstab/params.hpp"
#include "rtstab/simulator.hpp"
#include "rtstab/symbol.hpp"
#include "rtstab/witness.hpp"

namespace py = pybind11;
using namespace rtstab;

PYBIND11_MODULE(_rtstab, m) {
    m.doc() = "Two-phase interface stability toolkit (C++ core)";

    py::register_exception<DegenerateInput>(m, "DegenerateInput");
    py::register_exception<StableConfiguration>(m, "StableConfiguration");
    py::register_exception<OutOfBand>(m, "OutOfBand");
    py::register_exception<NoConvergence>(m, "NoConvergence");
    py::register_exception<ContourTooCoarse>(m, "ContourTooCoarse");
    py::register_exception<ZeroOnBoundary>(m, "ZeroOnBoundary");
    py::register_exception<SingularSystem>(m, "SingularSystem");
    py::register_exception<EpsilonTooLarge>(m, "EpsilonTooLarge");
    py::register_exception<OverflowGuard>(m, "OverflowGuardError");

    py::class_<FluidParams>(m, "FluidParams")
        .def(py::init<double, double, double, double, double, double>(),
             py::arg("rho1"), py::arg("rho2"), py::arg("mu1"), py::arg("mu2"),
             py::arg("sigma"), py::arg("gamma_a"))
        .def_property_readonly("rho1", &FluidParams::rho1)
        .def_property_readonly("rho2", &FluidParams::rho2)
        .def_property_readonly("mu1", &FluidParams::mu1)
        .def_property_readonly("mu2", &FluidParams::mu2)
        .def_property_readonly("sigma", &FluidParams::sigma)
        .def_property_readonly("gamma_a", &FluidParams::gamma_a)
        .def("jump", &FluidParams::jump)
        .def("is_heavy_on_top", &FluidParams::is_heavy_on_top);

    // symbol layer
    m.def("sqrt_principal", &sqrt_principal, py::arg("z"));
    m.def("omega", &omega, py::arg("phase"), py::arg("lam"), py::arg("tau"),
          py::arg("params"));
    m.def("eta", &eta, py::arg("phase"), py::arg("lam"), py::arg("tau"),
          py::arg("params"));
    m.def("symbol_s", &symbol_s, py::arg("lam"), py::arg("tau"), py::arg("params"));
    m.def("psi", &psi, py::arg("tau"), py::arg("params"));
    m.def("k_of_zeta", &k_of_zeta, py::arg("zeta"), py::arg("params"));
    m.def("phi", &phi, py::arg("zeta"), py::arg("params"));

    // dispersion layer
    py::class_<Rectangle>(m, "Rectangle")
        .def(py::init<double, double, double, double>(), py::arg("re_min"),
             py::arg("re_max"), py::arg("im_min"), py::arg("im_max"))
        .def_readwrite("re_min", &Rectangle::re_min)
        .def_readwrite("re_max", &Rectangle::re_max)
        .def_readwrite("im_min", &Rectangle::im_min)
        .def_readwrite("im_max", &Rectangle::im_max);

    py::class_<DispersionCurve>(m, "DispersionCurve")
        .def_readonly("taus", &DispersionCurve::taus)
        .def_readonly("lambdas", &DispersionCurve::lambdas)
        .def_readonly("residuals", &DispersionCurve::residuals)
        .def_readonly("tau_star", &DispersionCurve::tau_star);

    py::class_<GrowthSummary>(m, "GrowthSummary")
        .def_readonly("tau_max", &GrowthSummary::tau_max)
        .def_readonly("lambda_inf", &GrowthSummary::lambda_inf)
        .def_readonly("bracket_width", &GrowthSummary::bracket_width);

    py::class_<ZeroCount>(m, "ZeroCount")
        .def_readonly("count", &ZeroCount::count)
        .def_readonly("winding_residual", &ZeroCount::winding_residual)
        .def_readonly("boundary_min_modulus", &ZeroCount::boundary_min_modulus);

    m.def("cutoff_wavenumber", &cutoff_wavenumber, py::arg("params"));
    m.def("growth_rate", &growth_rate, py::arg("tau"), py::arg("params"),
          py::arg("tol") = 1e-10);
    m.def("dispersion_curve", &dispersion_curve, py::arg("params"),
          py::arg("n_points"), py::arg("tol") = 1e-10, py::arg("threads") = 1);
    m.def("max_growth", &max_growth, py::arg("params"), py::arg("tol") = 1e-9);
    m.def("count_zeros_rhp", &count_zeros_rhp, py::arg("tau"), py::arg("params"),
          py::arg("region"));
    m.def(
        "rightmost_root",
        [](double tau, const FluidParams& p, double floor_re, double im_bound,
           double right_edge) -> py::object {
            const auto r = rightmost_root(tau, p, floor_re, im_bound, right_edge);
            if (!r) return py::none();
            return py::cast(*r);
        },
        py::arg("tau"), py::arg("params"), py::arg("floor_re"),
        py::arg("im_bound") = 0.0, py::arg("right_edge") = 0.0);
    m.def("analyticity_floor", &analyticity_floor, py::arg("tau"), py::arg("params"));
    m.def(
        "asymptotic_constants",
        [](const FluidParams& p) {
            const auto c = asymptotic_constants(p);
            return py::make_tuple(c.c_small, c.c_star);
        },
        py::arg("params"));

    // mode profiles
    py::class_<ModeProfile>(m, "ModeProfile")
        .def_readonly("tau", &ModeProfile::tau)
        .def_readonly("lam", &ModeProfile::lambda)
        .def_readonly("h_amp", &ModeProfile::h_amp)
        .def_readonly("coeffs_lower", &ModeProfile::coeffs_lower)
        .def_readonly("coeffs_upper", &ModeProfile::coeffs_upper)
        .def_readonly("pressure_coeffs", &ModeProfile::pressure_coeffs)
        .def("velocity_x", &ModeProfile::velocity_x, py::arg("y"))
        .def("velocity_y", &ModeProfile::velocity_y, py::arg("y"))
        .def("pressure", &ModeProfile::pressure, py::arg("y"));

    m.def("solve_mode", &solve_mode, py::arg("lam"), py::arg("tau"),
          py::arg("h_amp"), py::arg("params"));
    m.def("residual_check", &residual_check, py::arg("profile"), py::arg("params"),
          py::arg("n_samples") = 20);
    m.def("dispersion_from_profile", &dispersion_from_profile, py::arg("tau"),
          py::arg("params"), py::arg("tol") = 1e-10);
    m.def("pressure_split", &pressure_split, py::arg("f_hat"), py::arg("g0_hat"),
          py::arg("tau"), py::arg("y"), py::arg("params"));

    // grids and the witness experiment
    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](int dim, std::size_t n, double box) {
                 GridSpec s{dim, n, box};
                 s.validate();
                 return s;
             }),
             py::arg("dim"), py::arg("n"), py::arg("box"))
        .def_readonly("dim", &GridSpec::dim)
        .def_readonly("n", &GridSpec::n)
        .def_readonly("box", &GridSpec::box);

    py::class_<GridField>(m, "GridField")
        .def_property_readonly("values", &GridField::values)
        .def_property_readonly("spectrum", &GridField::spectrum)
        .def("norm_p", &GridField::norm_p, py::arg("p"))
        .def("norm_l2", &GridField::norm_l2)
        .def("support_radius", &GridField::support_radius,
             py::arg("rel_tol") = 1e-12);

    py::class_<WindowFunction>(m, "WindowFunction")
        .def_readonly("epsilon", &WindowFunction::epsilon)
        .def_readonly("grid", &WindowFunction::grid)
        .def_readonly("fourier_support_radius",
                      &WindowFunction::fourier_support_radius);

    m.def("build_window", &build_window, py::arg("epsilon"), py::arg("grid"));
    m.def("build_heps", &build_heps, py::arg("xi0"), py::arg("epsilon"),
          py::arg("window"));
    m.def("apply_symbol_multiplier", &apply_symbol_multiplier, py::arg("field"),
          py::arg("lambda0"), py::arg("params"));
    m.def("witness_residual", &witness_residual, py::arg("xi0"),
          py::arg("epsilon"), py::arg("params"), py::arg("norm_p"),
          py::arg("grid"), py::arg("lambda0") = std::nullopt);

    // simulator
    py::enum_<RateProvenance>(m, "RateProvenance")
        .value("ZeroMode", RateProvenance::ZeroMode)
        .value("UnstableRoot", RateProvenance::UnstableRoot)
        .value("RightmostRoot", RateProvenance::RightmostRoot)
        .value("Clamped", RateProvenance::Clamped);

    py::class_<GrowthTable::Entry>(m, "GrowthTableEntry")
        .def_readonly("wavenumber", &GrowthTable::Entry::wavenumber)
        .def_readonly("rate", &GrowthTable::Entry::rate)
        .def_readonly("provenance", &GrowthTable::Entry::provenance)
        .def_readonly("winding_count", &GrowthTable::Entry::winding_count);

    py::class_<GrowthTable>(m, "GrowthTable")
        .def_readonly("entries", &GrowthTable::entries);

    py::class_<SimulationRun>(m, "SimulationRun")
        .def_readonly("times", &SimulationRun::times)
        .def_readonly("table", &SimulationRun::table)
        .def_property_readonly("field0",
                               [](const SimulationRun& r) { return r.field0; });

    py::class_<Diagnostics>(m, "Diagnostics")
        .def_readonly("peak_wavenumber", &Diagnostics::peak_wavenumber)
        .def_readonly("l2_amplitude", &Diagnostics::l2_amplitude)
        .def_readonly("max_height", &Diagnostics::max_height)
        .def_readonly("efolds", &Diagnostics::efolds);

    m.def("build_growth_table", &build_growth_table, py::arg("params"),
          py::arg("grid"), py::arg("tol") = 1e-10, py::arg("threads") = 1);
    m.def("make_run", &make_run, py::arg("field0"), py::arg("times"),
          py::arg("params"), py::arg("table_tol") = 1e-10, py::arg("threads") = 1);
    m.def("evolve", &evolve, py::arg("run"), py::arg("t"));
    m.def("diagnostics", &diagnostics, py::arg("run"), py::arg("t"));
    m.def("make_pure_mode", &make_pure_mode, py::arg("grid"), py::arg("xi"),
          py::arg("amplitude") = 1.0);
    m.def("make_white_noise", &make_white_noise, py::arg("grid"), py::arg("seed"),
          py::arg("amplitude") = 1.0);
}
