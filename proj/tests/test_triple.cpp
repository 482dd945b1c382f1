#include "doctest.h"
#include "support.hpp"
#include "tbtd/triple.hpp"

using namespace tbtd;
using tbtd::testing::ints;
using tbtd::testing::mat;
using tbtd::testing::rand_matrix;

namespace {

EigenvalueArray family(FamilyKind k, const Field& f, std::size_t d, const std::string& h, const char* q = nullptr) {
    FamilyTag t{k, f.parse_element(h), f.parse_element(h), std::nullopt, std::nullopt};
    if (q) t.q = f.parse_element(q);
    return generate_family(t, d, f);
}

EigenvalueArray qracah(const Field& f, std::size_t d, const std::string& h, const char* q) {
    return family(d % 2 ? FamilyKind::QRacahOdd : FamilyKind::QRacahEven, f, d, h, q);
}

void require_all_pass(const VerificationReport& r) {
    for (const auto& c : r.checks()) {
        INFO(r.title() << "/" << c.name << ": " << c.witness);
        CHECK(c.passed);
    }
}

const Check& get(const VerificationReport& r, const char* name) {
    const Check* c = r.find(name);
    REQUIRE(c);
    return *c;
}

struct Golden {
    Field f = Field::parse("Q(i)");
    TBSystem sys = build_system(make_array(f, ints(f, {1, -1}), ints(f, {1, -1})));
    LeonardTriple tri = make_triple(sys);
    WData w = build_W(tri);
    FieldElement i = f.sqrt_d();
};

}  // namespace

TEST_CASE("triple_scalars examples") {
    Golden g;
    CHECK(g.tri.scalars.which() == TripleCase::BetaTwo);
    CHECK(g.tri.scalars.h == g.f.one());
    CHECK(g.tri.scalars.rho == g.f.from_int(4));
    CHECK(g.tri.scalars.z == g.f.from_int(2) * g.i);
    CHECK_FALSE(g.tri.scalars.q);

    Field Q = Field::rationals();
    auto bi = triple_scalars(build_system(family(FamilyKind::BannaiIto, Q, 4, "1")));
    CHECK(bi.which() == TripleCase::BetaMinusTwo);
    CHECK(bi.rho == Q.from_int(4));
    CHECK(bi.z == Q.from_int(2));

    // generic case: z^2 = -h^2
    for (const char* h : {"1", "3", "-2/5"}) {
        auto sc = triple_scalars(build_system(qracah(g.f, 3, h, "2")));
        CHECK(sc.which() == TripleCase::Generic);
        CHECK(sc.z * sc.z == -sc.h * sc.h);
        CHECK((sc.z == sc.h * g.i || sc.z == -sc.h * g.i));
        FieldElement q = *sc.q;
        CHECK(q * q + (q * q).inv() == sc.beta);
    }
}

TEST_CASE("triple_scalars errors") {
    Field Q = Field::rationals();
    auto kraw3 = build_system(family(FamilyKind::Krawtchouk, Q, 3, "1"));
    try {
        triple_scalars(kraw3);
        FAIL("expected NoSquareRootInField");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSquareRootInField);
        CHECK(std::string(e.what()).find("Q(i)") != std::string::npos);
    }
    Field F7 = Field::parse("Fp:7");
    try {
        triple_scalars(build_system(family(FamilyKind::Krawtchouk, F7, 3, "1")));
        FAIL("expected NoSquareRootInField");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSquareRootInField);
        CHECK(std::string(e.what()).find("Fp2:7") != std::string::npos);
    }
    FamilyTag t{FamilyKind::Krawtchouk, Q.one(), Q.from_int(2), std::nullopt, std::nullopt};
    auto not_sd = build_system(generate_family(t, 3, Q));
    CHECK_THROWS_AS(triple_scalars(not_sd), Error);
    try {
        triple_scalars(not_sd);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSelfDual);
    }
    Field Qi = Field::parse("Q(i)");
    auto d1 = build_system(make_array(Qi, ints(Qi, {1, -1}), ints(Qi, {1, -1})));
    CHECK_THROWS_AS(triple_scalars(d1, Qi.from_int(-2)), Error);
    auto k3 = build_system(family(FamilyKind::Krawtchouk, Qi, 3, "1"));
    CHECK_THROWS_AS(triple_scalars(k3, Qi.from_int(3)), Error);
}

TEST_CASE("build_C examples") {
    Golden g;
    Matrix C(g.f, 2, 2);
    C(0, 1) = g.i;
    C(1, 0) = -g.i;
    CHECK(g.tri.C == C);
    CHECK(g.tri.A == mat(g.f, {{"0", "1"}, {"1", "0"}}));
    CHECK(g.tri.B == mat(g.f, {{"1", "0"}, {"0", "-1"}}));
    CHECK(commutator(g.tri.B, g.tri.C) == g.f.from_int(2) * g.i * g.tri.A);
    CHECK(linear_combination(g.sys.theta(), g.tri.E_dprime) == g.tri.C);
    require_all_pass(relations_check(g.tri));

    Field Q = Field::rationals();
    auto bi = make_triple(build_system(family(FamilyKind::BannaiIto, Q, 4, "1")));
    CHECK(anticommutator(bi.B, bi.C) == Q.from_int(2) * bi.A);
    CHECK(linear_combination(bi.sys.theta(), bi.E_dprime) == bi.C);
    require_all_pass(relations_check(bi));

    // a wrong z breaks the cyclic relations
    auto sc = g.tri.scalars;
    sc.z = -sc.z + g.f.one();
    CHECK_THROWS_AS(build_C(g.sys, sc), Error);
}

TEST_CASE("normalized relations") {
    Field Qi = Field::parse("Q(i)");
    FieldElement i = Qi.sqrt_d();
    {
        auto tri = make_triple(build_system(make_array(Qi, ints(Qi, {3, 1, -1, -3}), ints(Qi, {3, 1, -1, -3}))));
        CHECK(tri.scalars.rho == Qi.from_int(4));
        CHECK(tri.scalars.z * tri.scalars.z == Qi.from_int(-4));
        FieldElement z = tri.scalars.z;
        CHECK(commutator(tri.A, tri.B) == z * tri.C);
        CHECK(commutator(tri.B, tri.C) == z * tri.A);
        CHECK(commutator(tri.C, tri.A) == z * tri.B);
    }
    {
        auto tri = make_triple(build_system(family(FamilyKind::BannaiIto, Qi, 6, "1")));
        CHECK(tri.scalars.rho == Qi.from_int(4));
        CHECK(tri.scalars.z == Qi.from_int(2));
        CHECK(anticommutator(tri.A, tri.B) == Qi.from_int(2) * tri.C);
        CHECK(anticommutator(tri.B, tri.C) == Qi.from_int(2) * tri.A);
        CHECK(anticommutator(tri.C, tri.A) == Qi.from_int(2) * tri.B);
    }
    {
        // h = i gives z^2 = 1 and rho = 4 - beta^2
        FieldElement q0 = Qi.from_int(2);
        Vector th;
        for (long long k = 0; k <= 4; ++k) th.push_back(i * (q0.pow(4 - 2 * k) - q0.pow(2 * k - 4)));
        auto arr = make_array(Qi, th, th);
        auto tri = make_triple(build_system(arr));
        FieldElement q = *tri.scalars.q, b = tri.scalars.beta;
        CHECK(tri.scalars.h * tri.scalars.h == -Qi.one());
        CHECK(tri.scalars.z * tri.scalars.z == Qi.one());
        CHECK(tri.scalars.rho == Qi.from_int(4) - b * b);
        FieldElement s = tri.scalars.z;
        FieldElement den = q * q - (q * q).inv();
        auto qrel = [&](const Matrix& x, const Matrix& y) { return (q / den) * (x * y) - (q.inv() / den) * (y * x); };
        CHECK(qrel(tri.A, tri.B) == s * tri.C);
        CHECK(qrel(tri.B, tri.C) == s * tri.A);
        CHECK(qrel(tri.C, tri.A) == s * tri.B);
    }
}

TEST_CASE("build_W examples") {
    Golden g;
    CHECK(g.w.t == Vector{g.f.one(), -g.i});
    FieldElement half = g.f.parse_element("1/2");
    FieldElement a = half * (g.f.one() - g.i), b = half * (g.f.one() + g.i);
    Matrix W(g.f, 2, 2);
    W(0, 0) = a;
    W(0, 1) = b;
    W(1, 0) = b;
    W(1, 1) = a;
    CHECK(g.w.W == W);
    CHECK(g.w.kappa == -g.i);
    CHECK(g.w.P * g.w.P * g.w.P == -g.i * Matrix::identity(g.f, 2));
    require_all_pass(w_check(g.tri, g.w));
    require_all_pass(braid_check(g.w));

    Field Q = Field::rationals();
    for (std::size_t d : {2, 4, 6}) {
        auto tri = make_triple(build_system(family(FamilyKind::BannaiIto, Q, d, "1")), Q.from_int(-2));
        auto w = build_W(tri);
        for (const auto& t : w.t) CHECK(t * t == Q.one());
        CHECK(w.W * w.W == Matrix::identity(Q, d + 1));
        if (d == 4) CHECK(w.kappa == Q.one());
        require_all_pass(w_check(tri, w));
        require_all_pass(braid_check(w));
    }
}

TEST_CASE("kappa oracle: P^3 computed directly") {
    Field Qi = Field::parse("Q(i)");
    std::vector<EigenvalueArray> arrs{family(FamilyKind::Krawtchouk, Qi, 3, "2"), family(FamilyKind::BannaiIto, Qi, 4, "3"),
                                      qracah(Qi, 3, "1", "2"), qracah(Qi, 4, "5/3", "3")};
    for (const auto& arr : arrs) {
        auto tri = make_triple(build_system(arr));
        auto w = assemble_W(tri, t_values(tri));
        Matrix P3 = w.P.pow(3);
        CHECK(P3.is_diagonal());
        CHECK(P3 == P3(0, 0) * Matrix::identity(Qi, arr.d() + 1));
        CHECK(P3(0, 0) == kappa_value(tri));
    }
}

TEST_CASE("mutated t breaks braid and kappa") {
    Field Q = Field::rationals();
    auto tri = make_triple(build_system(family(FamilyKind::BannaiIto, Q, 4, "1")));
    Vector t = t_values(tri);
    t[1] = t[1] * Q.from_int(3);
    auto w = assemble_W(tri, t);
    auto rep = braid_check(w);
    const Check& c = get(rep, "braid_W_Wp");
    CHECK_FALSE(c.passed);
    REQUIRE(c.residual);
    CHECK_FALSE(c.residual->is_zero());
    CHECK_FALSE(get(w_check(tri, w), "P_cube").passed);
}

TEST_CASE("rho examples") {
    Golden g;
    CHECK(rho_automorphism(g.w, g.tri.A) == g.tri.B);
    CHECK(rho_automorphism(g.w, g.w.P) == g.w.P);
    Field Q = Field::rationals();
    auto tri = make_triple(build_system(family(FamilyKind::BannaiIto, Q, 4, "2")));
    auto w = build_W(tri);
    for (int k = 0; k < 3; ++k) {
        Matrix X = rand_matrix(Q, 5, 5);
        CHECK(rho_automorphism(w, rho_automorphism(w, rho_automorphism(w, X))) == X);
    }
    CHECK_THROWS_AS(rho_automorphism(w, Matrix::identity(Q, 3)), Error);
    require_all_pass(rho_check(g.tri, g.w));
    require_all_pass(rho_check(tri, w));
}

TEST_CASE("MatrixMap agrees with sequential application") {
    Field Qi = Field::parse("Q(i)");
    auto tri = make_triple(build_system(qracah(Qi, 3, "2", "3")));
    auto w = build_W(tri);
    auto m = antiautomorphisms(tri, w);
    MatrixMap rho = rho_map(tri, w), sigma = sigma_map(tri, w);
    std::vector<MatrixMap> maps{m.dagger, m.dagger_p, m.ddagger, m.ddagger_pp, rho, sigma};
    for (int k = 0; k < 3; ++k) {
        Matrix X = rand_matrix(Qi, 4, 4);
        for (const auto& f : maps)
            for (const auto& h : maps) {
                MatrixMap fh = f.then(h);
                CHECK(fh.apply(X) == h.apply(f.apply(X)));
                CHECK(fh.anti() == (f.anti() != h.anti()));
            }
    }
    for (const auto& f : maps)
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(f.apply_unit(i, j) == f.apply(Matrix::unit(Qi, 4, i, j)));
    CHECK(m.dagger.apply(tri.A) == dagger(tri.sys, tri.A));
}

TEST_CASE("antiautomorphism examples") {
    Golden g;
    auto m = antiautomorphisms(g.tri, g.w);
    CHECK(m.dagger.apply(g.tri.C) == -g.tri.C);
    CHECK(m.ddagger.apply(g.tri.B) == g.tri.C);
    CHECK(m.ddagger.apply(g.tri.C) == g.tri.B);
    require_all_pass(antiautomorphism_check(g.tri, g.w));

    Field Q = Field::rationals();
    auto bi = make_triple(build_system(family(FamilyKind::BannaiIto, Q, 4, "1")));
    auto w = build_W(bi);
    auto mb = antiautomorphisms(bi, w);
    CHECK(mb.dagger.apply(bi.C) == bi.C);
    CHECK_FALSE(first_unit_difference(mb.dagger_p, mb.dagger, 5));
    CHECK_FALSE(first_unit_difference(mb.dagger_pp, mb.dagger, 5));
    require_all_pass(antiautomorphism_check(bi, w));
}

TEST_CASE("sigma and PSL2(Z) examples") {
    Golden g;
    MatrixMap s = sigma_map(g.tri, g.w);
    CHECK(s.apply(mat(g.f, {{"0", "1"}, {"1", "0"}})) == mat(g.f, {{"1", "0"}, {"0", "-1"}}));
    CHECK(s.apply(mat(g.f, {{"1", "0"}, {"0", "-1"}})) == mat(g.f, {{"0", "1"}, {"1", "0"}}));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Matrix e = Matrix::unit(g.f, 2, i, j);
            CHECK(s.apply(s.apply(e)) == e);
        }
    require_all_pass(sigma_psl2z_check(g.tri, g.w));

    Field Q = Field::rationals();
    auto bi = make_triple(build_system(family(FamilyKind::BannaiIto, Q, 4, "1")));
    auto w = build_W(bi);
    CHECK(sigma_map(bi, w).apply(bi.C) == bi.C);
    require_all_pass(sigma_psl2z_check(bi, w));
}

TEST_CASE("reduce_psl2z_word") {
    CHECK(reduce_psl2z_word("") == "");
    CHECK(reduce_psl2z_word("rrr") == "");
    CHECK(reduce_psl2z_word("ss") == "");
    CHECK(reduce_psl2z_word("rsssr") == "rsr");
    CHECK(reduce_psl2z_word("srrrs") == "");
    CHECK(reduce_psl2z_word("rrsrrrsr") == "");
    CHECK(reduce_psl2z_word("rrsr") == "rrsr");
    CHECK(reduce_psl2z_word("rsrs") == "rsrs");
    CHECK_THROWS_AS(reduce_psl2z_word("rx"), Error);
}

TEST_CASE("property: every self-dual family passes every triple suite") {
    struct Case {
        const char* field;
        FamilyKind kind;
        const char* h;
        const char* q;
        std::size_t max_d;
    };
    std::vector<Case> cases{
        {"Q(i)", FamilyKind::Krawtchouk, "1", nullptr, 6},  {"Q(i)", FamilyKind::Krawtchouk, "-3/2", nullptr, 4},
        {"Q", FamilyKind::BannaiIto, "1", nullptr, 6},      {"Q(i)", FamilyKind::BannaiIto, "2", nullptr, 4},
        {"Q(i)", FamilyKind::QRacahEven, "1", "2", 5},      {"Q(i)", FamilyKind::QRacahEven, "2/3", "3", 4},
        {"Fp:101", FamilyKind::QRacahEven, "1", "5", 6},    {"Fp:101", FamilyKind::Krawtchouk, "7", nullptr, 6},
        {"Fp:101", FamilyKind::BannaiIto, "1", nullptr, 6},
    };
    for (const auto& cs : cases) {
        Field f = Field::parse(cs.field);
        for (std::size_t d = 1; d <= cs.max_d; ++d) {
            if (cs.kind == FamilyKind::BannaiIto && d % 2) continue;
            auto arr = cs.q ? qracah(f, d, cs.h, cs.q) : family(cs.kind, f, d, cs.h);
            CAPTURE(cs.field);
            CAPTURE(d);
            auto sys = build_system(arr);
            std::optional<FieldElement> hint;
            if (cs.kind == FamilyKind::BannaiIto) hint = f.from_int(-2);
            if (cs.q && d <= 2) {
                FieldElement q2 = f.parse_element(cs.q).pow(2);
                hint = q2 + q2.inv();
            }
            auto tri = make_triple(sys, hint);
            auto w = build_W(tri);
            require_all_pass(relations_check(tri));
            require_all_pass(w_check(tri, w));
            require_all_pass(braid_check(w));
            require_all_pass(rho_check(tri, w));
            require_all_pass(antiautomorphism_check(tri, w));
            require_all_pass(sigma_psl2z_check(tri, w));
        }
    }
}

TEST_CASE("the other sign of z negates C and keeps every identity") {
    Field Qi = Field::parse("Q(i)");
    Field Q = Field::rationals();
    for (const auto& arr : {family(FamilyKind::Krawtchouk, Qi, 3, "1"), family(FamilyKind::BannaiIto, Q, 4, "2"),
                            qracah(Qi, 4, "1", "3"), qracah(Qi, 3, "2", "1/2")}) {
        auto sys = build_system(arr);
        auto tri = make_triple(sys);
        auto sc = tri.scalars;
        sc.z = -sc.z;
        auto neg = build_C(sys, sc);
        CHECK(neg.C == -tri.C);
        auto w = build_W(neg);
        require_all_pass(relations_check(neg));
        require_all_pass(w_check(neg, w));
        require_all_pass(braid_check(w));
        require_all_pass(rho_check(neg, w));
        require_all_pass(antiautomorphism_check(neg, w));
        require_all_pass(sigma_psl2z_check(neg, w));
    }
}
