#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tbtd/json_io.hpp"
#include "tbtd/suites.hpp"

namespace py = pybind11;
using namespace tbtd;

namespace {

Json from_py(const py::object& doc) {
    py::object dumps = py::module_::import("json").attr("dumps");
    return Json::parse(dumps(doc).cast<std::string>());
}

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object reports_py(const std::vector<VerificationReport>& reps) {
    Json a = Json::array();
    for (const auto& r : reps) a.push_back(to_json(r));
    return to_py(a);
}

std::optional<FieldElement> opt_elem(const Field& f, const std::optional<std::string>& s) {
    if (!s) return std::nullopt;
    return f.parse_element(*s);
}

py::object generate(const std::string& family, std::size_t d, const std::string& h, const std::optional<std::string>& h_star,
                    const std::optional<std::string>& q, const std::optional<std::string>& beta, const std::string& field) {
    Field f = Field::parse(field);
    FamilyTag t;
    t.kind = family == "q-racah" ? (d % 2 ? FamilyKind::QRacahOdd : FamilyKind::QRacahEven) : parse_family(family);
    t.h = f.parse_element(h);
    t.h_star = h_star ? f.parse_element(*h_star) : t.h;
    t.q = opt_elem(f, q);
    if (!t.q) t.beta = opt_elem(f, beta);
    return to_py(array_json(generate_family(t, d, f), t));
}

py::object classify_doc(const py::object& doc) { return to_py(to_json(classify(array_from_json(from_py(doc))))); }

py::object build(const py::object& doc) {
    Json j = from_py(doc);
    return to_py(system_json(build_system(array_from_json(j)), parse_array_record(j).family));
}

py::object verify(const py::object& doc) {
    Json j = from_py(doc);
    SystemRecord rec = parse_system_record(j);
    ValidationResult v = validate_array(rec.array.field, rec.array.theta, rec.array.theta_star);
    if (!v.ok()) return reports_py({validation_report(v)});
    return reports_py(system_suites(system_from_json(j)));
}

std::pair<LeonardTriple, WData> make(const py::object& doc, const std::optional<std::string>& beta) {
    EigenvalueArray arr = array_from_json(from_py(doc));
    if (!is_self_dual(arr)) arr = scaled_self_dual(arr);
    LeonardTriple tri = make_triple(build_system(arr), opt_elem(arr.field(), beta));
    WData w = build_W(tri);
    return {std::move(tri), std::move(w)};
}

py::object triple(const py::object& doc, const std::optional<std::string>& beta) {
    auto [tri, w] = make(doc, beta);
    return to_py(triple_json(tri, w));
}

py::object triple_checks(const py::object& doc, const std::optional<std::string>& beta) {
    auto [tri, w] = make(doc, beta);
    return reports_py(triple_suites(tri, w));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "TB tridiagonal systems and Leonard triples in exact arithmetic";

    // kept alive by the module attribute
    static PyObject* error_type = py::exception<Error>(m, "TbtdError").ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
            exc.attr("code") = e.name();
            PyErr_SetObject(error_type, exc.ptr());
        }
    });

    m.def("generate", &generate, py::arg("family"), py::arg("d"), py::arg("h") = "1", py::arg("h_star") = py::none(),
          py::arg("q") = py::none(), py::arg("beta") = py::none(), py::arg("field") = "Q",
          "Eigenvalue array document of a family.");
    m.def("classify", &classify_doc, py::arg("doc"), "Family tag of an array document.");
    m.def("build", &build, py::arg("doc"), "System document of an array document.");
    m.def("verify", &verify, py::arg("doc"), "Check reports for an array or system document.");
    m.def("triple", &triple, py::arg("doc"), py::arg("beta") = py::none(),
          "Leonard triple document; the array is rescaled to be self-dual if needed.");
    m.def("triple_checks", &triple_checks, py::arg("doc"), py::arg("beta") = py::none(), "Check reports for the triple.");
    m.def("reduce_word", &reduce_psl2z_word, py::arg("word"), "Reduce a word in r, s by r^3 = s^2 = 1.");
}
