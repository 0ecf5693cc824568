#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "periham/cli.hpp"
#include "periham/convergence.hpp"
#include "periham/errors.hpp"
#include "periham/measure.hpp"
#include "periham/moments.hpp"
#include "periham/opuc.hpp"
#include "periham/recovery.hpp"
#include "periham/toeplitz.hpp"

namespace py = pybind11;
using namespace periham;

namespace {

std::vector<HatFunction> default_hats(
    const std::vector<std::pair<double, double>>& intervals) {
    std::vector<HatFunction> hats;
    for (const auto& [a, b] : intervals)
        hats.push_back({a, 0.5 * (a + b), b});
    return hats;
}

py::dict report_to_dict(const ConvergenceReport& rep,
                        const std::vector<std::pair<double, double>>& intervals) {
    py::dict d;
    d["eligibility"] = std::string(to_string(rep.label));
    d["note"] = rep.note;
    py::list entries;
    for (const auto& e : rep.entries) {
        py::dict je;
        je["T"] = e.T;
        if (!e.ok()) {
            je["error"] = e.error;
        } else {
            py::list ivs;
            for (const auto& ir : e.intervals) {
                py::dict ji;
                ji["a"] = ir.a;
                ji["b"] = ir.b;
                ji["integral"] = ir.integral;
                if (ir.reference) {
                    ji["reference"] = *ir.reference;
                    ji["abs_dev"] = *ir.abs_dev;
                }
                ivs.append(ji);
            }
            je["intervals"] = ivs;
            py::list hats;
            for (const auto& hr : e.hats) {
                py::dict jh;
                jh["a"] = hr.hat.a;
                jh["peak"] = hr.hat.peak;
                jh["b"] = hr.hat.b;
                jh["integral"] = hr.integral;
                if (hr.reference) {
                    jh["reference"] = *hr.reference;
                    jh["abs_dev"] = *hr.abs_dev;
                }
                hats.append(jh);
            }
            je["test_functions"] = hats;
        }
        entries.append(je);
    }
    d["entries"] = entries;
    py::list summaries;
    for (std::size_t i = 0; i < rep.interval_summaries.size(); ++i) {
        py::dict js;
        js["a"] = intervals[i].first;
        js["b"] = intervals[i].second;
        js["monotone_nonincreasing"] =
            rep.interval_summaries[i].monotone_nonincreasing;
        js["endpoint_improved"] = rep.interval_summaries[i].endpoint_improved;
        summaries.append(js);
    }
    d["summaries"] = summaries;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "inverse spectral solver for even diagonal canonical systems";

    py::register_exception<validation_error>(m, "ValidationError",
                                             PyExc_ValueError);
    py::register_exception<breakdown_error>(m, "BreakdownError",
                                            PyExc_RuntimeError);
    py::register_exception<quadrature_error>(m, "QuadratureError",
                                             PyExc_RuntimeError);

    py::class_<DensityExpr>(m, "Density")
        .def_readonly("source", &DensityExpr::source)
        .def("__call__", &DensityExpr::eval, py::arg("x"))
        .def("printed",
             [](const DensityExpr& d) { return print_expr(*d.ast); });

    m.def("parse_density",
          [](const std::string& s) { return parse_density(s); },
          py::arg("source"));

    py::class_<MeasureSpec>(m, "Measure")
        .def_static("from_json",
                    [](const std::string& text) {
                        nlohmann::json j;
                        try {
                            j = nlohmann::json::parse(text);
                        } catch (const nlohmann::json::exception& e) {
                            throw validation_error(
                                std::string("invalid measure JSON: ") + e.what());
                        }
                        return MeasureSpec::from_json(j);
                    },
                    py::arg("text"))
        .def_static("load", &MeasureSpec::load, py::arg("path"))
        .def("density", &MeasureSpec::density_at, py::arg("x"))
        .def("to_json",
             [](const MeasureSpec& s) { return s.to_json().dump(); })
        .def("validate", [](const MeasureSpec& s, double range) {
            ValidationReport rep = validate_even_positive(s, range);
            py::dict d;
            d["pass"] = rep.pass;
            d["evenness_residual"] = rep.evenness_residual;
            d["most_negative"] = rep.most_negative;
            d["atoms_symmetric"] = rep.atoms_symmetric;
            d["failures"] = rep.failures;
            return d;
        }, py::arg("range"));

    py::class_<MomentSequence>(m, "Moments")
        .def_readonly("T", &MomentSequence::T)
        .def_readonly("values", &MomentSequence::values)
        .def_static("from_values",
                    [](double T, std::vector<double> values) {
                        return MomentSequence::from_values(T, std::move(values));
                    },
                    py::arg("T"), py::arg("values"))
        .def("provenance", [](const MomentSequence& s) {
            std::vector<std::string> out;
            for (auto p : s.provenance)
                out.emplace_back(to_string(p));
            return out;
        });

    m.def("compute_moments", &compute_moments, py::arg("measure"),
          py::arg("T"), py::arg("max_index"));

    m.def("solve_nested", [](const MomentSequence& mom, int max_order) {
        NestedToeplitzSolve nested = solve_nested(mom, max_order);
        py::dict d;
        d["sums"] = nested.sums;
        std::vector<double> steps;
        for (int n = 0; n <= nested.max_order(); ++n)
            steps.push_back(nested.step(n));
        d["steps"] = steps;
        d["reflections"] = nested.reflections;
        d["variances"] = nested.variances;
        d["well_conditioned"] = nested.well_conditioned;
        return d;
    }, py::arg("moments"), py::arg("max_order"));

    m.def("dense_oracle_solve", [](const MomentSequence& mom, int order) {
        DenseSolve s = dense_oracle_solve(mom, order);
        return py::make_tuple(s.x, s.sum);
    }, py::arg("moments"), py::arg("order"));

    m.def("szego", [](const MomentSequence& mom, int max_order) {
        SzegoData sz = szego_from_moments(mom, max_order);
        py::dict d;
        d["phi1_sq"] = sz.phi1_sq;
        d["reflection"] = sz.reflection;
        d["monic_norm_sq"] = sz.monic_norm_sq;
        return d;
    }, py::arg("moments"), py::arg("max_order"));

    m.def("step_identity_max_dev", [](const MomentSequence& mom, int max_order) {
        SzegoData sz = szego_from_moments(mom, max_order);
        NestedToeplitzSolve nested = solve_nested(mom, max_order);
        return verify_step_identity(sz, nested).max_rel_dev;
    }, py::arg("moments"), py::arg("max_order"));

    py::class_<StepFunction>(m, "StepFunction")
        .def_readonly("T", &StepFunction::T)
        .def_readonly("values", &StepFunction::values)
        .def_property_readonly("piece_width", &StepFunction::piece_width)
        .def_property_readonly("t_max", &StepFunction::t_max)
        .def("__call__", &StepFunction::operator(), py::arg("t"))
        .def("integrate", &StepFunction::integrate, py::arg("a"), py::arg("b"));

    m.def("recover", &recover_hamiltonian, py::arg("measure"), py::arg("T"),
          py::arg("t_max"));
    m.def("recover_from_moments", &recover_from_moments, py::arg("moments"),
          py::arg("t_max"));
    m.def("h22", &h22, py::arg("h11"));

    py::class_<PiecewiseConstant>(m, "KernelTransform")
        .def_readonly("t", &PiecewiseConstant::t)
        .def_readonly("T", &PiecewiseConstant::T)
        .def_readonly("breakpoints", &PiecewiseConstant::breakpoints)
        .def_readonly("values", &PiecewiseConstant::values)
        .def("__call__", &PiecewiseConstant::value, py::arg("s"))
        .def("integral", &PiecewiseConstant::integral);

    m.def("kernel_transform", &kernel_transform, py::arg("moments"),
          py::arg("t"));
    m.def("kernel_value_at_zero", &kernel_value_at_zero, py::arg("f"));
    m.def("convolution_residual", &convolution_residual, py::arg("f"),
          py::arg("moments"), py::arg("samples") = 101);
    m.def("h11_from_kernel", &h11_from_kernel, py::arg("moments"),
          py::arg("t_max"));

    m.def("psi_T", &psi_T, py::arg("T"), py::arg("t"));
    m.def("eligibility", [](const MeasureSpec& s) {
        return std::string(to_string(eligibility(s)));
    }, py::arg("measure"));

    m.def("run_ladder",
          [](const MeasureSpec& spec, std::vector<double> Ts, double t_max,
             std::vector<std::pair<double, double>> intervals) {
              auto ref = match_reference(spec);
              auto rep = run_ladder(spec, Ts, t_max, intervals,
                                    default_hats(intervals),
                                    ref ? &*ref : nullptr);
              return report_to_dict(rep, intervals);
          },
          py::arg("measure"), py::arg("Ts"), py::arg("t_max"),
          py::arg("intervals"));

    m.def("pw_diagnostic", [](const MeasureSpec& s, double range, double delta,
                              double window) {
        PwDiagnostic diag = pw_diagnostic(s, range, delta, window);
        py::dict d;
        d["sup_unit_window_mass"] = diag.sup_unit_window_mass;
        py::list windows;
        for (const auto& w : diag.windows)
            windows.append(py::make_tuple(w.a, w.b, w.count));
        d["windows"] = windows;
        d["note"] = diag.note;
        return d;
    }, py::arg("measure"), py::arg("range"), py::arg("delta"),
       py::arg("window"));
}
