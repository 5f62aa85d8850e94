#include "latsum/asymptotics.hpp"
#include "latsum/errors.hpp"
#include "latsum/graph.hpp"
#include "latsum/lattice.hpp"
#include "latsum/quadrature.hpp"
#include "latsum/special.hpp"
#include "latsum/sums.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <utility>

namespace py = pybind11;
using namespace latsum;

namespace
{

std::vector<IntVec2> to_vectors(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs)
{
    std::vector<IntVec2> out;
    out.reserve(pairs.size());
    for (const auto& [x, y] : pairs) {
        out.push_back({x, y});
    }
    return out;
}

Vec2 to_vec(const std::pair<double, double>& x)
{
    return {x.first, x.second};
}

} // namespace

PYBIND11_MODULE(latsum, m)
{
    m.doc() = "Planar lattice sums, their integrals and asymptotic expansions";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidSpec>(m, "InvalidSpec", error);
    py::register_exception<SingularPoint>(m, "SingularPoint", error);
    py::register_exception<CutViolation>(m, "CutViolation", error);
    py::register_exception<DegeneratePoint>(m, "DegeneratePoint", error);
    py::register_exception<LowerHalfPlane>(m, "LowerHalfPlane", error);
    py::register_exception<PoleAt>(m, "PoleAt", error);
    py::register_exception<NotPositiveDefinite>(m, "NotPositiveDefinite", error);
    py::register_exception<ToleranceNotMet>(m, "ToleranceNotMet", error);
    py::register_exception<DegenerateGraph>(m, "DegenerateGraph", error);
    py::register_exception<InsufficientSamples>(m, "InsufficientSamples", error);

    py::enum_<BoxConstant>(m, "BoxConstant")
        .value("printed", BoxConstant::printed)
        .value("lemma", BoxConstant::lemma);

    py::class_<QuadraticForm>(m, "QuadraticForm")
        .def(py::init<double, double, double>(), py::arg("a"), py::arg("b"), py::arg("c"))
        .def_property_readonly("a", &QuadraticForm::a)
        .def_property_readonly("b", &QuadraticForm::b)
        .def_property_readonly("c", &QuadraticForm::c)
        .def_property_readonly("discriminant", &QuadraticForm::discriminant)
        .def_property_readonly("normalized", &QuadraticForm::normalized)
        .def_property_readonly("mu", &QuadraticForm::mu)
        .def("normalize", &QuadraticForm::normalize)
        .def("__call__", &QuadraticForm::operator(), py::arg("j"), py::arg("k"))
        .def("__repr__", [](const QuadraticForm& q) {
            return "QuadraticForm(" + py::repr(py::float_(q.a())).cast<std::string>() + ", " +
                   py::repr(py::float_(q.b())).cast<std::string>() + ", " +
                   py::repr(py::float_(q.c())).cast<std::string>() + ")";
        });

    py::class_<LatticeSpec>(m, "LatticeSpec")
        .def(py::init([](const std::vector<std::pair<std::int64_t, std::int64_t>>& v) {
                 return LatticeSpec::from_vectors(to_vectors(v));
             }),
             py::arg("vectors"))
        .def_static("named", [](const std::string& name) { return named_spec(name); }, py::arg("name"))
        .def_static("load", [](const std::string& s) { return load_spec(s); }, py::arg("name_or_path"))
        .def_static("from_json", [](const std::string& s) { return spec_from_json(s); }, py::arg("text"))
        .def("to_json", [](const LatticeSpec& s) { return spec_to_json(s); })
        .def_property_readonly("vectors",
                               [](const LatticeSpec& s) {
                                   std::vector<std::pair<std::int64_t, std::int64_t>> out;
                                   for (const auto& v : s.vectors()) {
                                       out.emplace_back(v.x, v.y);
                                   }
                                   return out;
                               })
        .def_property_readonly("size", &LatticeSpec::size)
        .def_property_readonly("sbar", &LatticeSpec::sbar)
        .def_property_readonly("form", &LatticeSpec::form)
        .def_property_readonly("det_sts", &LatticeSpec::det_sts)
        .def_property_readonly("reflection_symmetric", &LatticeSpec::reflection_symmetric);

    m.def("psi", [](const LatticeSpec& s, std::pair<double, double> x) { return psi_eval(s, to_vec(x)); },
          py::arg("spec"), py::arg("x"));
    m.def("f", [](const LatticeSpec& s, std::pair<double, double> x) { return f_eval(s, to_vec(x)); },
          py::arg("spec"), py::arg("x"));
    m.def("taylor_poly",
          [](const LatticeSpec& s, int order, std::pair<double, double> x) { return taylor_poly_eval(s, order, to_vec(x)); },
          py::arg("spec"), py::arg("m"), py::arg("x"));
    m.def("fm", [](const LatticeSpec& s, int order, std::pair<double, double> x) { return fm_eval(s, order, to_vec(x)); },
          py::arg("spec"), py::arg("m"), py::arg("x"));
    m.def(
        "grid_points",
        [](int n, std::optional<LatticeSpec> spec, std::optional<double> beta) {
            if (beta && !spec) {
                throw std::invalid_argument("a restricted grid needs a spec");
            }
            const GridDomain d = beta ? GridDomain::restricted(n, *spec, beta) : GridDomain::full(n);
            std::vector<std::tuple<std::int64_t, std::int64_t, double, double>> out;
            for_each_grid_point(d, [&](const GridPoint& p) { out.emplace_back(p.j, p.k, p.t.x, p.t.y); });
            return out;
        },
        py::arg("n"), py::arg("spec") = std::nullopt, py::arg("beta") = std::nullopt);

    py::class_<SumResult>(m, "SumResult")
        .def_readonly("value", &SumResult::value)
        .def_readonly("n", &SumResult::n)
        .def_property_readonly("method", [](const SumResult& r) { return std::string(to_string(r.method)); })
        .def_readonly("terms", &SumResult::terms)
        .def_readonly("err_estimate", &SumResult::err_estimate)
        .def("__float__", [](const SumResult& r) { return r.value; })
        .def("__repr__", [](const SumResult& r) {
            return "SumResult(n=" + std::to_string(r.n) + ", value=" + py::repr(py::float_(r.value)).cast<std::string>() +
                   ", method='" + std::string(to_string(r.method)) + "')";
        });

    m.def("fn_direct", &fn_direct, py::arg("spec"), py::arg("n"), py::arg("m") = std::nullopt,
          py::arg("beta") = std::nullopt, py::arg("box") = BoxConstant::printed);
    m.def("gn_direct", &gn_direct, py::arg("form"), py::arg("n"));
    m.def("gn_digamma", &gn_digamma, py::arg("form"), py::arg("n"));
    m.def("hn_direct", &hn_direct, py::arg("n"));
    m.def("un_direct", &un_direct, py::arg("form"), py::arg("n"));

    m.def("in_f1_closed", &in_f1_closed, py::arg("spec"), py::arg("n"));
    m.def("in_f_numeric", &in_f_numeric, py::arg("spec"), py::arg("n"), py::arg("tol") = 1e-10);
    m.def("in_fm_numeric", &in_fm_numeric, py::arg("spec"), py::arg("n"), py::arg("m"),
          py::arg("beta") = std::nullopt, py::arg("tol") = 1e-10, py::arg("box") = BoxConstant::printed);
    m.def("midpoint_error_bound", &midpoint_error_bound, py::arg("delta1"), py::arg("delta2"), py::arg("max_d2_1"),
          py::arg("max_d2_2"));

    py::class_<ExpansionTerms>(m, "ExpansionTerms")
        .def_property_readonly("c_n2logn", [](const ExpansionTerms& e) { return static_cast<double>(e.c_n2logn); })
        .def_property_readonly("c_n2", [](const ExpansionTerms& e) { return static_cast<double>(e.c_n2); })
        .def_property_readonly("c_n", [](const ExpansionTerms& e) { return static_cast<double>(e.c_n); })
        .def_property_readonly("c_1_even", [](const ExpansionTerms& e) { return static_cast<double>(e.c_1_even); })
        .def_property_readonly("c_1_odd", [](const ExpansionTerms& e) { return static_cast<double>(e.c_1_odd); })
        .def_property_readonly("c_inv_n", [](const ExpansionTerms& e) { return static_cast<double>(e.c_inv_n); })
        .def_property_readonly("c_inv_n2", [](const ExpansionTerms& e) { return static_cast<double>(e.c_inv_n2); })
        .def_property_readonly("c_inv_n3", [](const ExpansionTerms& e) { return static_cast<double>(e.c_inv_n3); })
        .def_property_readonly("scale", [](const ExpansionTerms& e) {
            return std::string(e.scale == LeadingScale::log_n ? "log_n" : "n2_log_n");
        })
        .def_property_readonly("error_order",
                               [](const ExpansionTerms& e) { return std::string(to_string(e.error_order)); })
        .def("error_order_at", [](const ExpansionTerms& e, int n) { return std::string(to_string(e.error_order_at(n))); })
        .def("evaluate", [](const ExpansionTerms& e, int n) { return static_cast<double>(e.evaluate(n)); },
             py::arg("n"));

    m.def("gn_expansion", [](const QuadraticForm& q) { return gn_expansion(q); }, py::arg("form"));
    m.def("fn_f1_expansion", &fn_f1_expansion, py::arg("spec"));
    m.def("in_f1_expansion", &in_f1_expansion, py::arg("spec"));
    m.def("hn_expansion", &hn_expansion);
    m.def("un_expansion", &un_expansion, py::arg("form"));
    m.def("leading_term", &leading_term, py::arg("spec"));
    m.def("composite_fn_estimate", &composite_fn_estimate, py::arg("spec"), py::arg("n"), py::arg("tol") = 1e-10);
    m.def(
        "theorem2_combination",
        [](const LatticeSpec& s, int n, int order, std::optional<double> beta, double tol) {
            return static_cast<double>(theorem2_combination(s, n, order, beta, tol));
        },
        py::arg("spec"), py::arg("n"), py::arg("m"), py::arg("beta") = std::nullopt, py::arg("tol") = 1e-10);

    py::class_<ResidualReport>(m, "ResidualReport")
        .def_property_readonly("samples",
                               [](const ResidualReport& r) {
                                   std::vector<std::pair<int, double>> out;
                                   for (const auto& s : r.samples) {
                                       out.emplace_back(s.n, s.residual);
                                   }
                                   return out;
                               })
        .def_readonly("model_exponent", &ResidualReport::model_exponent)
        .def_readonly("fitted_exponent", &ResidualReport::fitted_exponent)
        .def_readonly("fitted_log_power", &ResidualReport::fitted_log_power)
        .def_readonly("amplitude", &ResidualReport::amplitude)
        .def_readonly("passed", &ResidualReport::passed);
    m.def(
        "residual_order_fit",
        [](const std::vector<std::pair<int, double>>& samples, const std::string& model) {
            std::vector<ResidualSample> s;
            for (const auto& [n, r] : samples) {
                s.push_back({n, r});
            }
            return residual_order_fit(std::move(s), error_order_from_string(model));
        },
        py::arg("samples"), py::arg("model"));

    py::class_<TorusGraph>(m, "TorusGraph")
        .def(py::init<const LatticeSpec&, int>(), py::arg("spec"), py::arg("n"))
        .def_property_readonly("vertex_count", &TorusGraph::vertex_count)
        .def_property_readonly("degree", &TorusGraph::degree);
    m.def("trace_pseudoinverse_spectral", &trace_pseudoinverse_spectral, py::arg("graph"));
    m.def("trace_pseudoinverse_matrix", &trace_pseudoinverse_matrix, py::arg("graph"));
    m.def(
        "tau_and_kirchhoff",
        [](const TorusGraph& g) {
            const TauKirchhoff tk = tau_and_kirchhoff(g);
            return std::make_tuple(tk.tau, tk.kf);
        },
        py::arg("graph"));

    m.def("clausen_cl2", py::overload_cast<double>(&clausen_cl2), py::arg("theta"));
    m.def("dilog", &dilog_complex, py::arg("z"));
    m.def("kummer_omega", &kummer_omega, py::arg("r"), py::arg("theta"));
    m.def("log_abs_eta", py::overload_cast<std::complex<double>>(&log_abs_eta), py::arg("tau"));
    m.def("digamma", &digamma_complex, py::arg("z"));
    m.def("bernoulli_numbers", &bernoulli_numbers, py::arg("p"));
    m.def("bernoulli_poly", &bernoulli_poly, py::arg("p"), py::arg("x"));
    m.def("constants", []() {
        const Constants& c = constants();
        py::dict d;
        d["euler_gamma"] = c.euler_gamma;
        d["catalan"] = c.catalan;
        d["gamma_quarter"] = c.gamma_quarter;
        d["gamma_third"] = c.gamma_third;
        return d;
    });
}
