#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relchern/errors.hpp"
#include "relchern/expr.hpp"
#include "relchern/fibration.hpp"
#include "relchern/format.hpp"
#include "relchern/job.hpp"

namespace py = pybind11;
using namespace relchern;

namespace {

py::object to_py_rational(const Rational& q) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::int_(py::str(q.get_num().get_str())), py::int_(py::str(q.get_den().get_str())));
}

Rational from_py_rational(const py::handle& h) {
    if (py::isinstance<py::int_>(h)) {
        return Rational(Integer(py::str(h).cast<std::string>()));
    }
    const std::string num = py::str(h.attr("numerator")).cast<std::string>();
    const std::string den = py::str(h.attr("denominator")).cast<std::string>();
    Rational q{Integer(num), Integer(den)};
    q.canonicalize();
    return q;
}

// Rings are immutable and shared; Python sees them through this handle.
struct RingHandle {
    RingPtr ptr;
};

py::object euler_to_py(const EulerResult& r) {
    if (const auto* z = std::get_if<Integer>(&r)) return py::int_(py::str(z->get_str()));
    return py::cast(std::get<ChowPoly>(r));
}

} // namespace

PYBIND11_MODULE(_relchern, m) {
    m.doc() = "Exact pushforwards and relative Chern classes of hypersurface fibrations";

    auto base_error = py::register_exception<Error>(m, "RelchernError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", base_error.ptr());
    py::register_exception<ModeError>(m, "ModeError", base_error.ptr());
    py::register_exception<NonUnitError>(m, "NonUnitError", base_error.ptr());
    py::register_exception<SymbolError>(m, "SymbolError", base_error.ptr());
    py::register_exception<ContextError>(m, "ContextError", base_error.ptr());
    py::register_exception<SpecializationError>(m, "SpecializationError", base_error.ptr());
    py::register_exception<UnsupportedDegreeError>(m, "UnsupportedDegreeError", base_error.ptr());
    py::register_exception<DomainError>(m, "DomainError", base_error.ptr());

    py::class_<RingHandle>(m, "Ring")
        .def_property_readonly("bound", [](const RingHandle& r) { return r.ptr->bound(); })
        .def_property_readonly("symbols", [](const RingHandle& r) {
            std::vector<std::string> names;
            for (const auto& s : r.ptr->symbols()) names.push_back(s.name);
            return names;
        });

    py::class_<ChowPoly>(m, "ChowPoly")
        .def_property_readonly("ring", [](const ChowPoly& p) { return RingHandle{p.ring()}; })
        .def("__str__", &render_text)
        .def("__repr__", [](const ChowPoly& p) { return "ChowPoly(" + render_text(p) + ")"; })
        .def("latex", &render_latex)
        .def("to_json", [](const ChowPoly& p) { return class_to_json(p).dump(); })
        .def("component", &component, py::arg("k"))
        .def("is_zero", &ChowPoly::is_zero)
        .def("constant_term", [](const ChowPoly& p) { return to_py_rational(p.constant_term()); })
        .def("__eq__", [](const ChowPoly& a, const ChowPoly& b) { return a == b; })
        .def("__add__", [](const ChowPoly& a, const ChowPoly& b) { return a + b; })
        .def("__sub__", [](const ChowPoly& a, const ChowPoly& b) { return a - b; })
        .def("__mul__", [](const ChowPoly& a, const ChowPoly& b) { return a * b; })
        .def("__mul__", [](const ChowPoly& a, const py::object& c) { return from_py_rational(c) * a; })
        .def("__rmul__", [](const ChowPoly& a, const py::object& c) { return from_py_rational(c) * a; })
        .def("__add__", [](const ChowPoly& a, const py::object& c) { return a + ChowPoly::constant(a.ring(), from_py_rational(c)); })
        .def("__radd__", [](const ChowPoly& a, const py::object& c) { return a + ChowPoly::constant(a.ring(), from_py_rational(c)); })
        .def("__sub__", [](const ChowPoly& a, const py::object& c) { return a - ChowPoly::constant(a.ring(), from_py_rational(c)); })
        .def("__rsub__", [](const ChowPoly& a, const py::object& c) { return ChowPoly::constant(a.ring(), from_py_rational(c)) - a; })
        .def("__neg__", [](const ChowPoly& a) { return -a; })
        .def("__pow__", [](const ChowPoly& a, unsigned e) { return pow(a, e); });

    m.def("parse_class", [](const std::string& src, const RingHandle& ring) { return evaluate(*parse_class_expr(src), ring.ptr); },
          py::arg("expr"), py::arg("ring"), "Evaluate a class expression in a ring.");
    m.def("expand_ratio", &expand_ratio, py::arg("num"), py::arg("denom"));

    py::class_<BaseModel>(m, "BaseModel")
        .def_property_readonly("dim", &BaseModel::dim)
        .def_property_readonly("ring", [](const BaseModel& b) { return RingHandle{b.ring()}; })
        .def_property_readonly("is_formal", &BaseModel::is_formal)
        .def("divisor", &BaseModel::divisor)
        .def("apply_relations", &BaseModel::apply_relations)
        .def("chern_polynomial", [](const BaseModel& b) { return chern_polynomial(b); })
        .def("integrate", [](const BaseModel& b, const ChowPoly& c) { return to_py_rational(integrate(b, c)); });

    m.def("formal_base", [](int dim, std::vector<std::string> divisors, bool fano) {
        return BaseModel(FormalBase(dim, std::move(divisors), fano));
    }, py::arg("dim"), py::arg("divisors") = std::vector<std::string>{"L"}, py::arg("fano") = false);
    m.def("projective_space", [](int dim, int l_multiple) { return BaseModel(ProjectiveSpaceBase(dim, l_multiple)); },
          py::arg("dim"), py::arg("l_multiple"));
    m.def("specialize", [](const ChowPoly& cls, const BaseModel& target) { return specialize(cls, target.projective()); },
          py::arg("cls"), py::arg("base"));

    py::class_<BundleSpec>(m, "BundleSpec")
        .def(py::init([](const std::vector<std::pair<ChowPoly, int>>& roots) {
                 std::vector<BundleRoot> rs;
                 for (const auto& [root, mult] : roots) rs.push_back({root, mult});
                 return BundleSpec::make(std::move(rs));
             }),
             py::arg("roots"), "Roots as (linear class, multiplicity) pairs.")
        .def_property_readonly("rank", &BundleSpec::rank)
        .def("total_chern", &BundleSpec::total_chern)
        .def("inverse_total_chern", [](const BundleSpec& b) { return inverse_total_chern(b); })
        .def("pushforward", [](const BundleSpec& b, const std::string& expr) {
                 const ChowPoly ambient = evaluate(*parse_class_expr(expr), ProjClass::ambient_ring(b));
                 return pushforward_series(ProjClass::from_ambient(b, ambient));
             }, py::arg("expr"), "Push forward a class written in H and base symbols.")
        .def("pushforward_closed_form", [](const BundleSpec& b, const std::string& expr) {
                 const ChowPoly ambient = evaluate(*parse_class_expr(expr), ProjClass::ambient_ring(b));
                 return pushforward_closed_form(ProjClass::from_ambient(b, ambient));
             }, py::arg("expr"));

    py::class_<HypersurfaceSpec>(m, "HypersurfaceSpec")
        .def(py::init(&HypersurfaceSpec::make), py::arg("degree"), py::arg("beta"), py::arg("bundle"))
        .def_property_readonly("degree", &HypersurfaceSpec::degree)
        .def("q_class", [](const HypersurfaceSpec& h) { return q_class(h); })
        .def("q_class_direct", [](const HypersurfaceSpec& h) { return q_class_direct(h); })
        .def("relative_chern_class", [](const HypersurfaceSpec& h, const BaseModel& b) { return relative_chern_class(h, b); })
        .def("euler", [](const HypersurfaceSpec& h, const BaseModel& b, bool integrate) {
                 return euler_to_py(euler_characteristic(h, b, integrate ? EulerMode::Integrate : EulerMode::Auto));
             }, py::arg("base"), py::arg("integrate") = false)
        .def("svw", [](const HypersurfaceSpec& h, const BaseModel& b) { return svw_truncations(h, b); });

    m.def("z_family", [](int n, int d, const BaseModel& b) { return induced_hypersurface({n, d, "L", b.dim()}, b); },
          py::arg("n"), py::arg("d"), py::arg("base"));
    m.def("csm_route", [](int n, int d, const BaseModel& b) { return csm_route_z({n, d, "L", b.dim()}, b); },
          py::arg("n"), py::arg("d"), py::arg("base"));
    m.def("csm_check", [](int n, int d, const BaseModel& b) {
        const ZFamilySpec spec{n, d, "L", b.dim()};
        return csm_route_z(spec, b) == relative_chern_class(induced_hypersurface(spec, b), b);
    }, py::arg("n"), py::arg("d"), py::arg("base"));
    m.def("hypersurface_euler_poly", [](int n, int d) { return py::int_(py::str(hypersurface_euler_poly(n, d).get_str())); },
          py::arg("n"), py::arg("d"));

    m.def("run_job", [](const std::string& config) -> py::tuple {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(config);
        } catch (const nlohmann::json::parse_error& e) {
            return py::make_tuple(2, "", std::string("config is not valid JSON: ") + e.what() + "\n");
        }
        const JobOutput out = run_json(j);
        return py::make_tuple(out.exit_code, out.document, out.diagnostics);
    }, py::arg("config"), "Run a JSON job; returns (exit_code, stdout, stderr).");
}
