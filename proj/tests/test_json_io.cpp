#include "doctest.h"
#include "support.hpp"
#include "tbtd/json_io.hpp"

using namespace tbtd;
using tbtd::testing::ints;

namespace {

FamilyTag tag(FamilyKind k, const Field& f, long long h, long long hs, const char* q = nullptr) {
    FamilyTag t{k, f.from_int(h), f.from_int(hs), std::nullopt, std::nullopt};
    if (q) t.q = f.parse_element(q);
    return t;
}

bool same_system(const TBSystem& x, const TBSystem& y) {
    return x.array == y.array && x.inters.c == y.inters.c && x.inters.b == y.inters.b && x.inters.c_star == y.inters.c_star &&
           x.inters.b_star == y.inters.b_star && x.A == y.A && x.A_star == y.A_star && x.K == y.K && x.E == y.E &&
           x.E_star == y.E_star;
}

bool code_is(ErrorCode code, const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

}  // namespace

TEST_CASE("array document layout") {
    Field Q = Field::rationals();
    auto t = tag(FamilyKind::Krawtchouk, Q, 1, 1);
    Json j = array_json(generate_family(t, 3, Q), t);
    CHECK(j.dump() ==
          R"({"field":"Q","d":3,"theta":["3","1","-1","-3"],"theta_star":["3","1","-1","-3"],)"
          R"("family":{"kind":"krawtchouk","h":"1","h_star":"1"}})");
}

TEST_CASE("round trips over all three schemas") {
    for (const char* spec : {"Q", "Fp:101", "Q(i)"}) {
        Field f = Field::parse(spec);
        std::vector<std::pair<FamilyTag, std::size_t>> cases{
            {tag(FamilyKind::Krawtchouk, f, 2, -3), 4},
            {tag(FamilyKind::BannaiIto, f, 1, 1), 4},
            {tag(FamilyKind::QRacahOdd, f, 1, 1, "3"), 3},
        };
        for (const auto& [t, d] : cases) {
            CAPTURE(spec);
            auto arr = generate_family(t, d, f);
            Json ja = array_json(arr, t);
            CHECK(array_from_json(ja) == arr);
            auto rec = parse_array_record(Json::parse(ja.dump()));
            REQUIRE(rec.family);
            CHECK(tags_equivalent(*rec.family, t));
            CHECK(array_json(array_from_json(ja), rec.family) == ja);

            auto sys = build_system(arr);
            Json js = system_json(sys, t);
            CHECK(same_system(system_from_json(Json::parse(js.dump())), sys));
            CHECK(system_json(system_from_json(js), t) == js);
            CHECK(array_from_json(js) == arr);
        }
    }
    Field Qi = Field::parse("Q(i)");
    for (auto arr : {generate_family(tag(FamilyKind::Krawtchouk, Qi, 1, 1), 1, Qi),
                     generate_family(tag(FamilyKind::QRacahEven, Qi, 2, 2, "2"), 4, Qi)}) {
        auto tri = make_triple(build_system(arr));
        auto w = build_W(tri);
        Json jt = triple_json(tri, w);
        auto [tri2, w2] = triple_from_json(Json::parse(jt.dump()));
        CHECK(tri2.C == tri.C);
        CHECK(w2.P == w.P);
        CHECK(w2.kappa == w.kappa);
        CHECK(triple_json(tri2, w2) == jt);
        CHECK(same_system(system_from_json(jt), tri.sys));
    }
}

TEST_CASE("triple document with a tampered entry is rejected") {
    Field Qi = Field::parse("Q(i)");
    auto tri = make_triple(build_system(generate_family(tag(FamilyKind::Krawtchouk, Qi, 1, 1), 1, Qi)));
    Json jt = triple_json(tri, build_W(tri));
    CHECK(jt["kappa"] == "0+-1*sqrt(-1)");
    jt["C"][0][1] = "1";
    CHECK(code_is(ErrorCode::ParseError, [&] { triple_from_json(jt); }));
}

TEST_CASE("system documents keep their stored intersection numbers") {
    Field Q = Field::rationals();
    auto sys = build_system(generate_family(tag(FamilyKind::Krawtchouk, Q, 1, 1), 3, Q));
    Json js = system_json(sys);
    js["b"][1] = "0";
    auto broken = system_from_json(js);
    CHECK(broken.inters.b[1].is_zero());
    CHECK(broken.A(1, 2).is_zero());
    CHECK(broken.k[2].is_zero());
    CHECK_FALSE(verify_axioms(broken).find("irreducible")->passed);
}

TEST_CASE("malformed documents") {
    Field Q = Field::rationals();
    Json ja = array_json(make_array(Q, ints(Q, {1, -1}), ints(Q, {2, -2})));
    CHECK(code_is(ErrorCode::ParseError, [&] { parse_array_record(Json::array()); }));
    Json no_theta = ja;
    no_theta.erase("theta");
    CHECK(code_is(ErrorCode::ParseError, [&] { parse_array_record(no_theta); }));
    Json bad_d = ja;
    bad_d["d"] = 4;
    CHECK(code_is(ErrorCode::ParseError, [&] { parse_array_record(bad_d); }));
    Json bad_elem = ja;
    bad_elem["theta"][0] = "x/";
    CHECK(code_is(ErrorCode::ParseError, [&] { parse_array_record(bad_elem); }));
    Json number = ja;
    number["theta"][0] = 1;
    CHECK(code_is(ErrorCode::ParseError, [&] { parse_array_record(number); }));
    Json bad_field = ja;
    bad_field["field"] = "R";
    CHECK_THROWS_AS(parse_array_record(bad_field), Error);
    Json invalid = ja;
    invalid["theta"][1] = "1";
    CHECK(code_is(ErrorCode::InvalidArray, [&] { array_from_json(invalid); }));
    CHECK(parse_array_record(invalid).theta[1] == Q.one());
    Json ragged = system_json(build_system(array_from_json(ja)));
    ragged["c"] = Json::array({"1", "2"});
    CHECK(code_is(ErrorCode::ParseError, [&] { parse_system_record(ragged); }));
}

TEST_CASE("report documents") {
    VerificationReport r("demo");
    r.add("good", true);
    r.add("bad", false, "witness");
    Json j = to_json(r);
    CHECK(j.dump() ==
          R"({"title":"demo","passed":false,"checks":[{"name":"good","passed":true},)"
          R"({"name":"bad","passed":false,"witness":"witness"}]})");
}
