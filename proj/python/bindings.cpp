#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "series_mirage/diagnostics.hpp"
#include "series_mirage/errors.hpp"
#include "series_mirage/exact.hpp"
#include "series_mirage/experiment.hpp"
#include "series_mirage/expsum.hpp"
#include "series_mirage/format.hpp"
#include "series_mirage/grid.hpp"
#include "series_mirage/operator_series.hpp"
#include "series_mirage/series.hpp"

namespace py = pybind11;
namespace sm = series_mirage;

namespace {

std::vector<std::pair<sm::cplx, sm::cplx>> terms_of(const sm::ExpSum& s) {
    std::vector<std::pair<sm::cplx, sm::cplx>> out;
    for (const auto& t : s.terms()) out.emplace_back(t.coeff, t.alpha);
    return out;
}

sm::ExpSum expsum_from_pairs(const std::vector<std::pair<sm::cplx, sm::cplx>>& pairs) {
    std::vector<sm::ExpTerm> raw;
    raw.reserve(pairs.size());
    for (const auto& [c, a] : pairs) raw.push_back({c, a});
    return sm::ExpSum::make(raw);
}

py::array_t<sm::cplx> values_array(const sm::GridState& s) {
    return py::array_t<sm::cplx>(static_cast<py::ssize_t>(s.values().size()), s.values().data());
}

sm::ConfigOverrides overrides_from_dict(const std::string& experiment, const py::dict& options) {
    nlohmann::json doc = nlohmann::json::object();
    doc["experiment"] = experiment;
    for (const auto& [key, value] : options) {
        const auto name = py::cast<std::string>(key);
        if (py::isinstance<py::bool_>(value))
            throw sm::ConfigError("option '" + name + "' must not be a bool");
        if (py::isinstance<py::int_>(value))
            doc[name] = py::cast<long long>(value);
        else if (py::isinstance<py::float_>(value))
            doc[name] = py::cast<double>(value);
        else
            doc[name] = py::cast<std::string>(py::str(value));
    }
    return sm::overrides_from_json(doc, "options");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "HPM, ADM and Taylor series for linear and cubic Schrodinger equations";

    py::register_exception<sm::InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);
    py::register_exception<sm::OverflowError>(m, "SeriesOverflowError", PyExc_OverflowError);
    py::register_exception<sm::UnsupportedEquationError>(m, "UnsupportedEquationError",
                                                         PyExc_NotImplementedError);
    py::register_exception<sm::DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
    py::register_exception<sm::ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.attr("MAX_ORDER") = sm::kMaxOrder;

    // expsum_core
    py::class_<sm::ExpSum>(m, "ExpSum")
        .def(py::init(&expsum_from_pairs), py::arg("terms") = std::vector<std::pair<sm::cplx, sm::cplx>>{},
             "Canonical sum of coeff*exp(alpha*x) from (coeff, alpha) pairs")
        .def_property_readonly("terms", &terms_of)
        .def("__len__", &sm::ExpSum::size)
        .def("__call__", [](const sm::ExpSum& s, double x) { return sm::eval(s, x); })
        .def("dx", [](const sm::ExpSum& s, int order) { return sm::dx(s, order); }, py::arg("order") = 1)
        .def("conj", [](const sm::ExpSum& s) { return sm::conj(s); })
        .def("__mul__", [](const sm::ExpSum& a, const sm::ExpSum& b) { return a * b; })
        .def("__add__", [](const sm::ExpSum& a, const sm::ExpSum& b) { return a + b; })
        .def("__sub__", [](const sm::ExpSum& a, const sm::ExpSum& b) { return a - b; })
        .def("__eq__", [](const sm::ExpSum& a, const sm::ExpSum& b) { return a == b; })
        .def("to_json", [](const sm::ExpSum& s) { return sm::to_json(s).dump(); })
        .def_static("from_json", [](const std::string& text) {
            return sm::expsum_from_json(nlohmann::json::parse(text));
        })
        .def("__repr__", [](const sm::ExpSum& s) { return "ExpSum(" + sm::to_json(s).dump() + ")"; });
    m.def("combine",
          py::overload_cast<const sm::ExpSum&, sm::cplx, const sm::ExpSum&, sm::cplx>(&sm::combine));
    m.def("max_coeff_distance",
          py::overload_cast<const sm::ExpSum&, const sm::ExpSum&>(&sm::max_coeff_distance));

    py::class_<sm::TimePoly>(m, "TimePoly")
        .def(py::init<std::vector<sm::ExpSum>>(), py::arg("coeffs"))
        .def_property_readonly("coeffs", &sm::TimePoly::coeffs)
        .def_property_readonly("degree", &sm::TimePoly::degree)
        .def("__call__", [](const sm::TimePoly& p, double x, double t) { return sm::eval(p, x, t); })
        .def("integrate_t", [](const sm::TimePoly& p) { return sm::integrate_t(p); })
        .def("derivative_t", [](const sm::TimePoly& p) { return sm::derivative_t(p); })
        .def("to_json", [](const sm::TimePoly& p) { return sm::to_json(p).dump(); });

    // series_methods
    py::enum_<sm::EquationKind>(m, "EquationKind")
        .value("LINEAR", sm::EquationKind::Linear)
        .value("REDUCED_NLS", sm::EquationKind::ReducedNls)
        .value("FULL_NLS", sm::EquationKind::FullNls);
    py::enum_<sm::Method>(m, "Method")
        .value("HPM", sm::Method::Hpm)
        .value("ADM", sm::Method::Adm)
        .value("TAYLOR", sm::Method::Taylor);
    py::class_<sm::EquationTag>(m, "EquationTag")
        .def_static("linear", &sm::EquationTag::linear)
        .def_static("reduced_nls", &sm::EquationTag::reduced_nls, py::arg("gamma"))
        .def_static("full_nls", &sm::EquationTag::full_nls, py::arg("gamma"))
        .def_property_readonly("kind", &sm::EquationTag::kind)
        .def_property_readonly("gamma", &sm::EquationTag::gamma);
    py::class_<sm::SeriesSolution>(m, "SeriesSolution")
        .def_readonly("terms", &sm::SeriesSolution::terms)
        .def_readonly("equation", &sm::SeriesSolution::equation)
        .def_readonly("method", &sm::SeriesSolution::method)
        .def_property_readonly("order", &sm::SeriesSolution::order);
    m.def("hpm_series", &sm::hpm_series, py::arg("u0"), py::arg("eq"), py::arg("order"));
    m.def("adm_series", &sm::adm_series, py::arg("u0"), py::arg("eq"), py::arg("order"));
    m.def("taylor_series", &sm::taylor_series, py::arg("u0"), py::arg("eq"), py::arg("order"));
    m.def("adomian_cubic", &sm::adomian_cubic, py::arg("terms"));
    m.def("partial_sum_eval", &sm::partial_sum_eval, py::arg("sol"), py::arg("order"), py::arg("x"),
          py::arg("t"));
    m.def("series_residual", &sm::series_residual, py::arg("sol"), py::arg("order"));
    m.def("max_term_distance", &sm::max_term_distance);

    // exact_solutions
    py::class_<sm::ExactEvaluator>(m, "ExactEvaluator")
        .def("__call__", &sm::ExactEvaluator::eval, py::arg("x"), py::arg("t"))
        .def("describe", &sm::ExactEvaluator::describe)
        .def("solves", &sm::ExactEvaluator::solves);
    m.def("exact_linear", &sm::exact_linear, py::arg("u0"));
    m.def("exact_reduced_nls", &sm::exact_reduced_nls, py::arg("alpha"), py::arg("gamma"));
    m.def("remainder_closed_form", &sm::remainder_closed_form, py::arg("b"), py::arg("amplitude"),
          py::arg("order"), py::arg("t"));

    // grid_numerics
    py::class_<sm::Grid>(m, "Grid")
        .def(py::init<double, int>(), py::arg("length"), py::arg("n"))
        .def_property_readonly("length", &sm::Grid::length)
        .def_property_readonly("n", &sm::Grid::size)
        .def("x", &sm::Grid::x);
    py::class_<sm::GridState>(m, "GridState")
        .def_property_readonly("grid", &sm::GridState::grid)
        .def_property_readonly("values", &values_array)
        .def_property_readonly("time", &sm::GridState::time);
    py::class_<sm::GaussianPacket>(m, "GaussianPacket")
        .def(py::init([](double center, double sigma, bool normalized) {
                 return sm::GaussianPacket{center, sigma, normalized};
             }),
             py::arg("center"), py::arg("sigma"), py::arg("normalized") = true)
        .def("__call__", &sm::GaussianPacket::operator())
        .def("free_solution", &sm::GaussianPacket::free_solution);
    m.def("sample", &sm::sample, py::arg("grid"), py::arg("f"), py::arg("time") = 0.0);
    m.def("sample_gaussian", [](const sm::Grid& g, const sm::GaussianPacket& p) { return sm::sample(g, p); });
    m.def("spectral_dxx", &sm::spectral_dxx);
    m.def("free_propagate_spectral", &sm::free_propagate_spectral, py::arg("state"), py::arg("t"));
    m.def("split_step_nls", &sm::split_step_nls, py::arg("state"), py::arg("gamma"), py::arg("dt"),
          py::arg("steps"), py::call_guard<py::gil_scoped_release>());
    m.def("l2_norm", &sm::l2_norm);
    m.def("sup_error", &sm::sup_error);

    // operator_series
    py::class_<sm::OperatorSpec>(m, "OperatorSpec")
        .def_property_readonly("dim", &sm::OperatorSpec::dim)
        .def_property_readonly("eigenvalues",
                               [](const sm::OperatorSpec& op) {
                                   std::vector<double> v;
                                   for (const auto& p : op.eigenpairs()) v.push_back(p.value);
                                   return v;
                               })
        .def("eigenvector", [](const sm::OperatorSpec& op, int k) { return op.eigenpairs().at(k).vector; })
        .def("apply", &sm::OperatorSpec::apply);
    m.def("laplacian_dirichlet", &sm::laplacian_dirichlet, py::arg("n"), py::arg("h"));
    m.def("diagonal_operator", &sm::diagonal_operator, py::arg("values"));
    m.def("series_evolve", &sm::series_evolve, py::arg("op"), py::arg("u0"), py::arg("t"),
          py::arg("order"));
    m.def("eigen_project", &sm::eigen_project, py::arg("op"), py::arg("u0"));
    m.def("exact_evolve", &sm::exact_evolve, py::arg("op"), py::arg("u0"), py::arg("t"));

    // diagnostics
    py::enum_<sm::NormClass>(m, "NormClass")
        .value("SQUARE_INTEGRABLE", sm::NormClass::SquareIntegrable)
        .value("BOUNDED_NOT_L2", sm::NormClass::BoundedNotL2)
        .value("UNBOUNDED", sm::NormClass::Unbounded)
        .value("ZERO", sm::NormClass::Zero);
    m.def("classify_normalizability",
          py::overload_cast<const sm::ExpSum&>(&sm::classify_normalizability));
    m.def("classify_normalizability",
          py::overload_cast<const sm::GaussianPacket&>(&sm::classify_normalizability));
    py::class_<sm::ErrorRow>(m, "ErrorRow")
        .def_readonly("order", &sm::ErrorRow::order)
        .def_readonly("time", &sm::ErrorRow::time)
        .def_readonly("sup_error", &sm::ErrorRow::sup_error)
        .def_readonly("bound", &sm::ErrorRow::bound);
    m.def(
        "truncation_error_table",
        [](const sm::SeriesSolution& sol, const sm::ExactEvaluator& exact, const std::vector<int>& orders,
           const std::vector<double>& times, const std::vector<double>& xs) {
            return sm::truncation_error_table(sol, exact, orders, times, xs).rows;
        },
        py::arg("sol"), py::arg("exact"), py::arg("orders"), py::arg("times"), py::arg("x_samples"));
    m.def("unit_modulus_deviation", &sm::unit_modulus_deviation, py::arg("u"), py::arg("samples"));

    // cli
    m.def(
        "run_experiment",
        [](const std::string& experiment, const py::dict& options) {
            const auto config = sm::resolve_config(overrides_from_dict(experiment, options), std::nullopt);
            const auto result = sm::run(config);
            return py::make_tuple(result.status, result.files, result.failed_checks);
        },
        py::arg("experiment"), py::arg("options") = py::dict(),
        "Runs one experiment; returns (exit_status, files, failed_checks).");
}
