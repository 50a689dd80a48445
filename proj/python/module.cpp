#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sibuya/integrator.hpp"
#include "sibuya/potential.hpp"
#include "sibuya/stokes.hpp"
#include "sibuya/types.hpp"
#include "sibuya/verify.hpp"
#include "sibuya/zeros.hpp"

namespace py = pybind11;
using namespace sibuya;

namespace {

RayConfig make_cfg(double rel_tol, double abs_tol, double radius) {
    RayConfig cfg;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    cfg.radius = radius;
    return cfg;
}

Potential pot(int m, const std::vector<cplx>& coeffs) {
    return Potential::make(m, coeffs);
}

Potential pot_head(int m, std::vector<double> head) {
    head.push_back(0.0);
    return Potential::make_real(m, head);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Canonical solutions, Stokes multipliers and their zeros for "
                "-y'' + (x^m + a_1 x^{m-1} + ... + a_m) y = 0";

    py::register_exception<input_error>(mod, "InputError", PyExc_ValueError);
    py::register_exception<numerics_error>(mod, "NumericsError",
                                           PyExc_ArithmeticError);
    py::register_exception<verification_error>(mod, "VerificationError",
                                               PyExc_RuntimeError);

    py::class_<ZeroRecord>(mod, "ZeroRecord")
        .def_readonly("lam", &ZeroRecord::lambda)
        .def_readonly("c_deriv", &ZeroRecord::c_deriv)
        .def_readonly("winding", &ZeroRecord::winding)
        .def_readonly("is_real", &ZeroRecord::is_real)
        .def_readonly("is_simple", &ZeroRecord::is_simple)
        .def_readonly("residual", &ZeroRecord::residual)
        .def_readonly("tangency", &ZeroRecord::tangency)
        .def("__repr__", [](const ZeroRecord& r) {
            return "ZeroRecord(lam=(" + std::to_string(r.lambda.real()) + "," +
                   std::to_string(r.lambda.imag()) +
                   "), winding=" + std::to_string(r.winding) + ")";
        });

    py::class_<CoalescenceEvent>(mod, "CoalescenceEvent")
        .def_readonly("alpha", &CoalescenceEvent::alpha)
        .def_readonly("lam", &CoalescenceEvent::lambda)
        .def_readonly("c_abs", &CoalescenceEvent::c_abs)
        .def_readonly("dc_abs", &CoalescenceEvent::dc_abs)
        .def_readonly("winding", &CoalescenceEvent::winding);

    py::class_<SweepResult>(mod, "SweepResult")
        .def_readonly("alphas", &SweepResult::alphas)
        .def_readonly("slices", &SweepResult::slices)
        .def_readonly("track_ids", &SweepResult::track_ids)
        .def_readonly("events", &SweepResult::events);

    mod.def(
        "stokes",
        [](int m, const std::vector<cplx>& coeffs, double rel_tol,
           double abs_tol, double radius) {
            return stokes_c(pot(m, coeffs),
                            make_cfg(rel_tol, abs_tol, radius))
                .c;
        },
        py::arg("m"), py::arg("coeffs"), py::arg("rel_tol") = 1e-9,
        py::arg("abs_tol") = 1e-14, py::arg("radius") = 0.0,
        "Stokes multiplier C(a_1..a_m).");

    mod.def(
        "connection",
        [](int m, const std::vector<cplx>& coeffs, double rel_tol,
           double abs_tol, double radius) {
            const ConnectionData d = stokes_c(
                pot(m, coeffs), make_cfg(rel_tol, abs_tol, radius));
            py::dict out;
            out["c"] = d.c;
            out["unit_coeff_residual"] = d.unit_coeff_residual;
            return out;
        },
        py::arg("m"), py::arg("coeffs"), py::arg("rel_tol") = 1e-9,
        py::arg("abs_tol") = 1e-14, py::arg("radius") = 0.0,
        "C plus the unit-coefficient residual of the connection formula.");

    mod.def(
        "f0",
        [](int m, const std::vector<cplx>& coeffs, double rel_tol,
           double abs_tol, double radius) {
            const ScaledComplex v = f0_scaled(
                pot(m, coeffs), make_cfg(rel_tol, abs_tol, radius));
            return v.mantissa * std::exp(v.log_scale);
        },
        py::arg("m"), py::arg("coeffs"), py::arg("rel_tol") = 1e-9,
        py::arg("abs_tol") = 1e-14, py::arg("radius") = 0.0,
        "f_0(a) = Phi_0(0, a); overflows for |a| large, see f0_log.");

    mod.def(
        "f0_log",
        [](int m, const std::vector<cplx>& coeffs, double rel_tol,
           double abs_tol, double radius) {
            const ScaledComplex v = f0_scaled(
                pot(m, coeffs), make_cfg(rel_tol, abs_tol, radius));
            return py::make_tuple(v.mantissa, v.log_scale);
        },
        py::arg("m"), py::arg("coeffs"), py::arg("rel_tol") = 1e-9,
        py::arg("abs_tol") = 1e-14, py::arg("radius") = 0.0,
        "(mantissa, log_scale) with f_0 = mantissa * exp(log_scale).");

    mod.def(
        "origin_data",
        [](int m, const std::vector<cplx>& coeffs, double rel_tol,
           double abs_tol, double radius) {
            const ScaledPair v = canonical_origin(
                pot(m, coeffs), make_cfg(rel_tol, abs_tol, radius));
            py::dict out;
            out["value"] = v.value;
            out["deriv"] = v.deriv;
            out["log_scale"] = v.log_scale;
            return out;
        },
        py::arg("m"), py::arg("coeffs"), py::arg("rel_tol") = 1e-9,
        py::arg("abs_tol") = 1e-14, py::arg("radius") = 0.0,
        "Phi_0(0), Phi_0'(0) as mantissas with a shared log scale.");

    mod.def(
        "dc_dlambda",
        [](int m, const std::vector<cplx>& coeffs, double rel_tol,
           double abs_tol, double contour_radius, int n) {
            const Potential p = pot(m, coeffs);
            return derivative_c(p, p.coeffs.back(),
                                make_cfg(rel_tol, abs_tol, 0.0),
                                contour_radius, n);
        },
        py::arg("m"), py::arg("coeffs"), py::arg("rel_tol") = 1e-9,
        py::arg("abs_tol") = 1e-14, py::arg("contour_radius") = 0.0,
        py::arg("n") = 8,
        "dC/dlambda at lambda = a_m via contour quadrature.");

    mod.def(
        "spectrum",
        [](int m, const std::vector<double>& head, double lo, double hi,
           int grid, double tol, bool enforce, double rel_tol,
           double abs_tol) {
            SearchWindow w;
            w.lo = lo;
            w.hi = hi;
            w.grid = grid;
            w.tol = tol;
            const Potential p = pot_head(m, head);
            const RayConfig cfg = make_cfg(rel_tol, abs_tol, 0.0);
            std::vector<ZeroRecord> recs = scan_real_zeros(p, w, cfg);
            classify_zeros(recs, p, cfg, tol, enforce);
            return recs;
        },
        py::arg("m"), py::arg("head"), py::arg("lo"), py::arg("hi"),
        py::arg("grid") = 64, py::arg("tol") = 1e-9,
        py::arg("enforce") = false, py::arg("rel_tol") = 1e-9,
        py::arg("abs_tol") = 1e-14,
        "Real zeros of lambda -> -iC(a_1..a_{m-1}, lambda) on [lo, hi], "
        "with winding and simpleness certificates.");

    mod.def(
        "winding",
        [](int m, const std::vector<double>& head, cplx box_lo, cplx box_hi,
           double rel_tol, double abs_tol) {
            return winding_count(pot_head(m, head), box_lo, box_hi,
                                 make_cfg(rel_tol, abs_tol, 0.0));
        },
        py::arg("m"), py::arg("head"), py::arg("box_lo"), py::arg("box_hi"),
        py::arg("rel_tol") = 1e-9, py::arg("abs_tol") = 1e-14,
        "Number of zeros of C inside the rectangle, argument principle.");

    mod.def(
        "sweep",
        [](int m, const std::function<std::vector<double>(double)>& family,
           double alpha_hi, double alpha_lo, int steps, double lo, double hi,
           int grid, double tol, double rel_tol, double abs_tol) {
            SearchWindow w;
            w.lo = lo;
            w.hi = hi;
            w.grid = grid;
            w.tol = tol;
            return sweep_family(m, family, alpha_hi, alpha_lo, steps, w,
                                make_cfg(rel_tol, abs_tol, 0.0));
        },
        py::arg("m"), py::arg("family"), py::arg("alpha_hi"),
        py::arg("alpha_lo"), py::arg("steps"), py::arg("lo"), py::arg("hi"),
        py::arg("grid") = 64, py::arg("tol") = 1e-9,
        py::arg("rel_tol") = 1e-9, py::arg("abs_tol") = 1e-14,
        "Track real zeros over a coefficient family a(alpha) and locate "
        "coalescence points.");

    mod.def(
        "f0_negative_zeros",
        [](int m, double lo, double hi, int grid, double tol,
           double pos_limit, int pos_samples, double rel_tol,
           double abs_tol) {
            SearchWindow w;
            w.lo = lo;
            w.hi = hi;
            w.grid = grid;
            w.tol = tol;
            return f0_negative_zeros(m, w, make_cfg(rel_tol, abs_tol, 0.0),
                                     pos_limit, pos_samples);
        },
        py::arg("m"), py::arg("lo"), py::arg("hi"), py::arg("grid") = 64,
        py::arg("tol") = 1e-9, py::arg("pos_limit") = 20.0,
        py::arg("pos_samples") = 50, py::arg("rel_tol") = 1e-9,
        py::arg("abs_tol") = 1e-14,
        "Zeros of lambda -> f_0 at a = 0 (all on the negative axis).");

    mod.def(
        "hypothesis",
        [](int m, const std::vector<double>& head) {
            const HypothesisResult r = check_hypothesis(head, m);
            py::dict out;
            out["accepted"] = r.accepted;
            out["j"] = r.j;
            out["violating_k"] = r.violating_k;
            return out;
        },
        py::arg("m"), py::arg("head"),
        "Sign conditions (j-k) a_k >= 0 plus a_2 <= 0 for m = 4, j = 2.");

    mod.def(
        "verify",
        [](std::uint64_t seed, const std::vector<std::string>& selection,
           double rel_tol, double abs_tol) {
            const VerificationReport rep = run_suite(
                seed, selection, make_cfg(rel_tol, abs_tol, 0.0));
            py::module_ json = py::module_::import("json");
            return json.attr("loads")(rep.to_json());
        },
        py::arg("seed") = 1, py::arg("selection") = std::vector<std::string>{},
        py::arg("rel_tol") = 1e-9, py::arg("abs_tol") = 1e-14,
        "Run the certification suite; returns the report as a dict.");
}
