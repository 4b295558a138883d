#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bohrlab/acceptance.hpp"

namespace py = pybind11;
using namespace bohrlab;

namespace {

SchwarzOrder order_from_object(const py::object& obj) {
    if (obj.is_none()) {
        return SchwarzOrder::inf();
    }
    if (py::isinstance<py::str>(obj)) {
        return SchwarzOrder::parse(obj.cast<std::string>());
    }
    if (py::isinstance<SchwarzOrder>(obj)) {
        return obj.cast<SchwarzOrder>();
    }
    return SchwarzOrder(obj.cast<int>());
}

RadiusProblem make_problem(int thm, const py::object& alpha, const py::object& p, int N,
                           const py::object& m0, const py::object& m1, const py::object& m2,
                           const std::string& h) {
    const RadiusVariant variant = variant_from_code(thm);
    ConcaveFamily family = variant == RadiusVariant::PoleRogosinski
                               ? ConcaveFamily::pole(p.cast<double>())
                               : ConcaveFamily::opening_angle(alpha.cast<double>());
    RadiusProblem prob{family,
                       variant,
                       N,
                       order_from_object(m0),
                       order_from_object(m1),
                       order_from_object(m2),
                       VanishingOrderSpec::parse(h)};
    prob.validate();
    return prob;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bohr-Rogosinski radii for concave univalent function families";

    py::register_exception<NoSignChangeError>(m, "NoSignChangeError", PyExc_RuntimeError);
    py::register_exception<EnclosureTooWideError>(m, "EnclosureTooWideError", PyExc_RuntimeError);

    py::class_<SchwarzOrder>(m, "SchwarzOrder")
        .def(py::init<int>())
        .def_static("inf", &SchwarzOrder::inf)
        .def_static("parse", &SchwarzOrder::parse)
        .def_property_readonly("is_inf", &SchwarzOrder::is_inf)
        .def("__repr__", [](const SchwarzOrder& o) { return "SchwarzOrder(" + o.to_string() + ")"; });
    py::implicitly_convertible<py::int_, SchwarzOrder>();

    py::class_<ConcaveFamily>(m, "ConcaveFamily")
        .def_static("opening_angle", &ConcaveFamily::opening_angle)
        .def_static("pole", &ConcaveFamily::pole);

    py::class_<VanishingOrderSpec>(m, "VanishingOrderSpec")
        .def_static("identity", &VanishingOrderSpec::identity)
        .def_static("affine", &VanishingOrderSpec::affine)
        .def_static("parse", &VanishingOrderSpec::parse)
        .def("__repr__",
             [](const VanishingOrderSpec& s) { return "VanishingOrderSpec(" + s.to_string() + ")"; });

    py::class_<RadiusProblem>(m, "RadiusProblem")
        .def(py::init(&make_problem), py::arg("thm"), py::arg("alpha") = py::none(),
             py::arg("p") = py::none(), py::arg("N") = 1, py::arg("m0") = 1,
             py::arg("m1") = 1, py::arg("m2") = 1, py::arg("h") = "n");

    py::class_<RadiusResult>(m, "RadiusResult")
        .def_readonly("root", &RadiusResult::root)
        .def_readonly("bracket_lo", &RadiusResult::bracket_lo)
        .def_readonly("bracket_hi", &RadiusResult::bracket_hi)
        .def_readonly("residual", &RadiusResult::residual)
        .def_readonly("iterations", &RadiusResult::iterations)
        .def_readonly("capped", &RadiusResult::capped)
        .def_readonly("reported_radius", &RadiusResult::reported_radius)
        .def("__repr__", [](const RadiusResult& r) {
            return "RadiusResult(root=" + std::to_string(r.root) +
                   ", reported_radius=" + std::to_string(r.reported_radius) + ")";
        });

    py::class_<SchwarzFunction>(m, "SchwarzFunction")
        .def_static("sample", &SchwarzFunction::sample, py::arg("m"), py::arg("num_factors"),
                    py::arg("seed"))
        .def_static("monomial", &SchwarzFunction::monomial)
        .def_static("zero", &SchwarzFunction::zero)
        .def_readonly("vanishing_order", &SchwarzFunction::vanishing_order)
        .def_readonly("factors", &SchwarzFunction::factors)
        .def_readonly("damping", &SchwarzFunction::damping)
        .def("eval", &SchwarzFunction::eval);

    py::class_<CertificationConfig>(m, "CertificationConfig")
        .def(py::init<>())
        .def_readwrite("samples", &CertificationConfig::samples)
        .def_readwrite("seed", &CertificationConfig::seed)
        .def_readwrite("theta_grid", &CertificationConfig::theta_grid)
        .def_readwrite("radius_grid", &CertificationConfig::radius_grid)
        .def_readwrite("tolerance", &CertificationConfig::tolerance)
        .def_readwrite("series_order", &CertificationConfig::series_order)
        .def_readwrite("threads", &CertificationConfig::threads);

    py::class_<Violation>(m, "Violation")
        .def_readonly("check", &Violation::check)
        .def_readonly("params", &Violation::params)
        .def_readonly("margin", &Violation::margin)
        .def_readonly("limit", &Violation::limit);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("checks_run", &VerificationReport::checks_run)
        .def_readonly("violations", &VerificationReport::violations)
        .def_readonly("worst_margin", &VerificationReport::worst_margin)
        .def_readonly("worst_by_check", &VerificationReport::worst_by_check)
        .def_property_readonly("passed", &VerificationReport::passed);

    py::class_<CriterionResult>(m, "CriterionResult")
        .def_readonly("id", &CriterionResult::id)
        .def_readonly("name", &CriterionResult::name)
        .def_readonly("passed", &CriterionResult::passed)
        .def_readonly("worst", &CriterionResult::worst)
        .def_readonly("detail", &CriterionResult::detail);

    m.def("coeff_a", &coeff_a, py::arg("alpha"), py::arg("n"));
    m.def("coeff_c", &coeff_c, py::arg("p"), py::arg("n"));
    m.def("f_alpha_eval", py::overload_cast<double, double>(&f_alpha_eval));
    m.def("f_alpha_tail", &f_alpha_tail);
    m.def("k_p_eval", py::overload_cast<double, double>(&k_p_eval));
    m.def("k_p_tail", &k_p_tail);
    m.def("extremal_distance", &extremal_distance);
    m.def("classical_br_radius", &classical_br_radius);
    m.def("find_radius", &find_radius, py::arg("problem"), py::arg("tol") = 1e-12);
    m.def("closed_form_radius",
          [](const RadiusProblem& prob) -> py::object {
              const auto value = closed_form_radius(prob);
              return value ? py::cast(*value) : py::none();
          });
    m.def(
        "run_verification",
        [](const CertificationConfig& cfg, double radius_scale) {
            return run_default_suite(cfg, radius_scale);
        },
        py::arg("config") = CertificationConfig{}, py::arg("radius_scale") = 0.9);
    m.def(
        "run_acceptance",
        [](std::uint64_t seed) {
            AcceptanceOptions opts;
            opts.seed = seed;
            return run_acceptance(opts);
        },
        py::arg("seed") = 42);

    m.attr("__version__") = "0.1.0";
}
