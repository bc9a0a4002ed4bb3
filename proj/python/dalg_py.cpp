#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dalg/smoothness.hpp"

namespace py = pybind11;
using namespace dalg;

namespace {

py::object fraction(const Scalar& s) {
    static auto* Fraction = new py::object(py::module_::import("fractions").attr("Fraction"));
    return (*Fraction)(py::int_(py::str(s.numerator())), py::int_(py::str(s.denominator())));
}

Scalar scalar_of(const py::handle& v) {
    if (py::isinstance<py::str>(v)) return Scalar::parse(v.cast<std::string>());
    return Scalar::parse(py::str(v).cast<std::string>());
}

py::dict decomposition_dict(const Decomposition& d) {
    py::dict r;
    r["I"] = d.I;
    r["S"] = d.S;
    r["R"] = d.R;
    r["R_components"] = d.R_components;
    r["T_circ"] = d.T_circ;
    r["T_bullet"] = d.T_bullet;
    return r;
}

std::vector<std::string> family_lines(const AutomorphismFamily& nu) {
    std::vector<std::string> out;
    std::string text = render_family(nu);
    std::size_t start = 0;
    for (std::size_t end; (end = text.find('\n', start)) != std::string::npos; start = end + 1) out.push_back(text.substr(start, end - start));
    return out;
}

Poly evaluate(const Presentation& p, const std::string& expr) { return Algebra(p).evaluate(parse_expression(expr, p.n())); }

}  // namespace

PYBIND11_MODULE(dalg, m) {
    m.doc() = "Diffusion algebras: PBW checks, classification and differential calculi";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<NotPbwError>(m, "NotPbwError", PyExc_ValueError);
    py::register_exception<RestrictionError>(m, "RestrictionError", PyExc_ValueError);
    py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_RuntimeError);

    py::class_<Presentation>(m, "Presentation")
        .def(py::init<int>(), py::arg("n"))
        .def_static("parse", [](const std::string& text) { return parse_presentation(text); })
        .def_static("load", &load_presentation, py::arg("path"))
        .def_property_readonly("n", &Presentation::n)
        .def("g", [](const Presentation& p, int i, int j) { return fraction(p.g(i, j)); })
        .def("x", [](const Presentation& p, int i) { return fraction(p.x(i)); })
        .def("set_g", [](Presentation& p, int i, int j, const py::object& v) { p.set_g(i, j, scalar_of(v)); })
        .def("set_x", [](Presentation& p, int i, const py::object& v) { p.set_x(i, scalar_of(v)); })
        .def("validate", &validate_presentation)
        .def("__str__", &render_presentation)
        .def(py::self == py::self);

    m.def("normal_form", [](const Presentation& p, const std::string& expr) { return render(evaluate(p, expr)); },
          py::arg("p"), py::arg("expr"));

    m.def("is_pbw", [](const Presentation& p) {
        auto r = is_pbw(p);
        py::object triple = py::none();
        if (r.first_failure) triple = py::make_tuple((*r.first_failure)[0], (*r.first_failure)[1], (*r.first_failure)[2]);
        return py::make_tuple(r.pbw, triple);
    });

    m.def("gk_dimension", &gk_dimension);

    m.def("classify", [](const Presentation& p) {
        auto dec = decompose(p);
        auto fam = identify_family(p, dec);
        py::dict r = decomposition_dict(dec);
        r["family"] = to_string(fam.family);
        py::dict params;
        for (const auto& [k, v] : fam.params) params[py::str(k)] = fraction(v);
        r["params"] = params;
        r["violations"] = fam.violations;
        if (p.n() == 3) r["case"] = three_generator_case(dec, fam.family);
        return r;
    });

    m.def(
        "tables",
        [](int n, const std::string& mode) {
            if (mode != "paper" && mode != "full") throw py::value_error("mode must be 'paper' or 'full'");
            std::vector<std::string> out;
            for (const auto& t : generate_templates(n, mode == "paper" ? TableMode::paper : TableMode::full)) out.push_back(render_template(t));
            return out;
        },
        py::arg("n"), py::arg("mode") = "paper");

    m.def("decide_smoothness", [](const Presentation& p) {
        auto v = decide_smoothness(p);
        py::dict r;
        r["verdict"] = to_string(v.verdict);
        r["case"] = v.theorem_case ? py::object(py::str(to_string(*v.theorem_case))) : py::none();
        r["family"] = to_string(v.fam.family);
        r["witness"] = v.witness ? py::object(py::cast(family_lines(*v.witness))) : py::none();
        if (v.obstruction)
            r["obstruction"] = py::make_tuple(v.obstruction->i, v.obstruction->t, render(v.obstruction->residual));
        else
            r["obstruction"] = py::none();
        r["notes"] = v.notes;
        return r;
    });

    m.def(
        "verify_calculus",
        [](const Presentation& p, int dd, int connected, int form) {
            auto v = decide_smoothness(p);
            if (!v.witness) throw HypothesisError("no witness: verdict " + to_string(v.verdict));
            auto report = verify_witness(p, *v.witness, VerificationBounds{dd, connected, form});
            py::dict checks;
            for (const auto& [name, ok] : report.checks) checks[py::str(name)] = ok;
            return checks;
        },
        py::arg("p"), py::arg("dd_bound") = 4, py::arg("connected_bound") = 5, py::arg("form_bound") = -1);

    m.def("partials", [](const Presentation& p, const std::string& expr) {
        auto v = decide_smoothness(p);
        if (!v.witness) throw HypothesisError("no witness: verdict " + to_string(v.verdict));
        Calculus c(p, *v.witness);
        Poly f = evaluate(p, expr);
        std::vector<std::string> out;
        for (int a = 1; a <= p.n(); ++a) out.push_back(render(c.partial(a, f)));
        return out;
    });
}
