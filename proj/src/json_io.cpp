#include "tbtd/json_io.hpp"

namespace tbtd {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& member(const Json& j, const char* key) {
    if (!j.is_object()) bad("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing key '") + key + "'");
    return *it;
}

FieldElement elem(const Field& f, const Json& j, const std::string& where) {
    if (!j.is_string()) bad(where + ": expected an element string");
    return f.parse_element(j.get<std::string>());
}

Vector vec(const Field& f, const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where + ": expected a list");
    Vector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(elem(f, j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

Matrix mat(const Field& f, const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where + ": expected a list of rows");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(vec(f, j[i], where + "[" + std::to_string(i) + "]"));
    const std::size_t n = rows.size(), m = n ? rows[0].size() : 0;
    Matrix x(f, n, m);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != m) bad(where + ": ragged rows");
        for (std::size_t k = 0; k < m; ++k) x(i, k) = rows[i][k];
    }
    return x;
}

FamilyTag tag_from(const Field& f, const Json& j) {
    FamilyTag t;
    const Json& kind = member(j, "kind");
    if (!kind.is_string()) bad("family.kind: expected a string");
    t.kind = parse_family(kind.get<std::string>());
    t.h = elem(f, member(j, "h"), "family.h");
    t.h_star = elem(f, member(j, "h_star"), "family.h_star");
    if (j.contains("q")) t.q = elem(f, j["q"], "family.q");
    if (j.contains("beta")) t.beta = elem(f, j["beta"], "family.beta");
    return t;
}

void expect(const Json& j, const char* key, const Matrix& rebuilt) {
    if (mat(rebuilt.field(), member(j, key), key) != rebuilt) bad(std::string("stored ") + key + " differs from the rebuilt value");
}

}  // namespace

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Vector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.to_string());
    return a;
}

Json to_json(const FamilyTag& tag) {
    Json j;
    j["kind"] = family_name(tag.kind);
    j["h"] = tag.h.to_string();
    j["h_star"] = tag.h_star.to_string();
    if (tag.q) j["q"] = tag.q->to_string();
    if (tag.beta) j["beta"] = tag.beta->to_string();
    return j;
}

Json to_json(const VerificationReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks()) {
        Json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        if (!c.passed) e["witness"] = c.witness;
        checks.push_back(std::move(e));
    }
    Json j;
    j["title"] = r.title();
    j["passed"] = r.all_passed();
    j["checks"] = std::move(checks);
    return j;
}

Json array_json(const EigenvalueArray& arr, const std::optional<FamilyTag>& tag) {
    Json j;
    j["field"] = arr.field().spec();
    j["d"] = arr.d();
    j["theta"] = to_json(arr.theta());
    j["theta_star"] = to_json(arr.theta_star());
    if (tag) j["family"] = to_json(*tag);
    return j;
}

Json system_json(const TBSystem& sys, const std::optional<FamilyTag>& tag) {
    Json j = array_json(sys.array, tag);
    j["c"] = to_json(sys.inters.c);
    j["b"] = to_json(sys.inters.b);
    j["c_star"] = to_json(sys.inters.c_star);
    j["b_star"] = to_json(sys.inters.b_star);
    j["A"] = to_json(sys.A);
    j["A_star"] = to_json(sys.A_star);
    j["K"] = sys.k.empty() ? Json(nullptr) : to_json(sys.K);
    return j;
}

Json triple_json(const LeonardTriple& tri, const WData& w, const std::optional<FamilyTag>& tag) {
    Json j = system_json(tri.sys, tag);
    j["beta"] = tri.scalars.beta.to_string();
    j["z"] = tri.scalars.z.to_string();
    j["kappa"] = w.kappa.to_string();
    j["t"] = to_json(w.t);
    j["C"] = to_json(tri.C);
    j["W"] = to_json(w.W);
    j["W_prime"] = to_json(w.W_prime);
    j["W_dprime"] = to_json(w.W_dprime);
    j["P"] = to_json(w.P);
    return j;
}

ArrayRecord parse_array_record(const Json& j) {
    ArrayRecord r;
    const Json& field = member(j, "field");
    if (!field.is_string()) bad("field: expected a descriptor string");
    r.field = Field::parse(field.get<std::string>());
    r.theta = vec(r.field, member(j, "theta"), "theta");
    r.theta_star = vec(r.field, member(j, "theta_star"), "theta_star");
    if (j.contains("d")) {
        const Json& d = j["d"];
        if (!d.is_number_unsigned() || d.get<std::size_t>() + 1 != r.theta.size()) bad("d does not match the length of theta");
    }
    if (j.contains("family") && !j["family"].is_null()) r.family = tag_from(r.field, j["family"]);
    return r;
}

SystemRecord parse_system_record(const Json& j) {
    SystemRecord r;
    r.array = parse_array_record(j);
    if (j.contains("c") || j.contains("b")) {
        const Field& f = r.array.field;
        IntersectionNumbers in;
        in.c = vec(f, member(j, "c"), "c");
        in.b = vec(f, member(j, "b"), "b");
        in.c_star = j.contains("c_star") ? vec(f, j["c_star"], "c_star") : Vector{};
        in.b_star = j.contains("b_star") ? vec(f, j["b_star"], "b_star") : Vector{};
        const std::size_t d = r.array.theta.size() - 1;
        for (const auto* v : {&in.c, &in.b})
            if (v->size() != d) bad("intersection numbers must have d entries");
        for (const auto* v : {&in.c_star, &in.b_star})
            if (!v->empty() && v->size() != d) bad("dual intersection numbers must have d entries");
        r.inters = std::move(in);
    }
    return r;
}

EigenvalueArray array_from_json(const Json& j) {
    ArrayRecord r = parse_array_record(j);
    return make_array(r.field, r.theta, r.theta_star);
}

TBSystem system_from_json(const Json& j) {
    SystemRecord r = parse_system_record(j);
    EigenvalueArray arr = make_array(r.array.field, r.array.theta, r.array.theta_star);
    if (!r.inters) return build_system(arr);
    IntersectionNumbers in = *r.inters;
    if (in.c_star.empty() || in.b_star.empty()) {
        IntersectionNumbers dual = intersection_numbers(arr);
        if (in.c_star.empty()) in.c_star = dual.c_star;
        if (in.b_star.empty()) in.b_star = dual.b_star;
    }
    return assemble_system(arr, in);
}

std::pair<LeonardTriple, WData> triple_from_json(const Json& j) {
    TBSystem sys = system_from_json(j);
    const Field& f = sys.field();
    std::optional<FieldElement> beta;
    if (j.contains("beta")) beta = elem(f, j["beta"], "beta");
    LeonardTriple tri = make_triple(sys, beta);
    WData w = build_W(tri);
    if (j.contains("z") && elem(f, j["z"], "z") != tri.scalars.z) bad("stored z differs from the rebuilt value");
    if (j.contains("kappa") && elem(f, j["kappa"], "kappa") != w.kappa) bad("stored kappa differs from the rebuilt value");
    if (j.contains("t") && vec(f, j["t"], "t") != w.t) bad("stored t differs from the rebuilt value");
    const std::pair<const char*, const Matrix*> mats[] = {
        {"C", &tri.C}, {"W", &w.W}, {"W_prime", &w.W_prime}, {"W_dprime", &w.W_dprime}, {"P", &w.P}};
    for (const auto& [key, m] : mats)
        if (j.contains(key)) expect(j, key, *m);
    return {std::move(tri), std::move(w)};
}

}  // namespace tbtd
