#include "tbtd/triple.hpp"

#include <random>

namespace tbtd {

namespace {

std::string num(std::size_t i) { return std::to_string(i); }

Vector k_inverse(const Vector& k) {
    Vector r;
    for (const auto& x : k) r.push_back(x.inv());
    return r;
}

/// K^{-1} X^t K with K = diag(k)
Matrix k_transpose(const Vector& k, const Matrix& x) {
    const std::size_t n = x.rows();
    Matrix r(x.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!x(j, i).is_zero()) r(i, j) = x(j, i) * k[j] / k[i];
    return r;
}

std::string root_hint(const FieldElement& v) {
    const Field& f = v.field();
    if (f.is_extension()) return "no field in the supported tower contains it";
    if (f.is_prime_base()) return "use the field Fp2:" + f.characteristic().get_str();
    if ((-v).sqrt()) return "use the field Q(i)";
    // sqrt(a/b) lies in Q(sqrt(ab)); strip square factors of ab
    mpz_class n = v.a().get_num() * v.a().get_den(), D = n < 0 ? -1 : 1;
    n = abs(n);
    for (mpz_class p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e % 2) D *= p;
    }
    return "use the field Q(sqrt:" + mpz_class(D * n).get_str() + ")";
}

/// (e, e') with rel(X, Y) = e XY + e' YX
std::pair<FieldElement, FieldElement> rel_coeffs(const TripleScalars& sc, const Field& f) {
    switch (sc.which()) {
        case TripleCase::BetaTwo:
            return {f.one(), -f.one()};
        case TripleCase::BetaMinusTwo:
            return {f.one(), f.one()};
        case TripleCase::Generic:
            break;
    }
    const FieldElement& q = *sc.q;
    FieldElement den = q.pow(2) - q.pow(-2);
    return {q / den, -q.inv() / den};
}

Matrix rel(const std::pair<FieldElement, FieldElement>& e, const Matrix& x, const Matrix& y) {
    return e.first * (x * y) + e.second * (y * x);
}

Matrix spectral_sum(const Vector& t, const std::vector<Matrix>& E) { return linear_combination(t, E); }

void unit_equal(CheckBuilder& c, const MatrixMap& f, const MatrixMap& g, std::size_t n, const std::string& what) {
    auto diff = first_unit_difference(f, g, n);
    if (diff) c.require(false, what + " differs on e_" + num(diff->first) + num(diff->second));
}

}  // namespace

TripleCase TripleScalars::which() const {
    const Field& f = beta.field();
    if (beta == f.from_int(2)) return TripleCase::BetaTwo;
    if (beta == f.from_int(-2)) return TripleCase::BetaMinusTwo;
    return TripleCase::Generic;
}

TripleScalars triple_scalars(const TBSystem& sys, std::optional<FieldElement> beta_hint) {
    const EigenvalueArray& arr = sys.array;
    if (!is_self_dual(arr)) throw Error(ErrorCode::NotSelfDual, "th != th*; rescale with self_dual_scaling first");
    const Field& f = arr.field();
    const std::size_t d = arr.d();
    const long long dd = static_cast<long long>(d);
    const Vector& th = arr.theta();

    TripleScalars sc;
    if (d >= 3) {
        sc.beta = std::get<FieldElement>(fundamental_parameter(arr));
        if (beta_hint && *beta_hint != sc.beta)
            throw Error(ErrorCode::InvalidArgument, "beta " + beta_hint->to_string() + " is not the fundamental parameter " +
                                                        sc.beta.to_string());
    } else {
        sc.beta = beta_hint ? *beta_hint : f.from_int(2);
    }
    if (sc.beta.field() != f) throw Error(ErrorCode::FieldMismatch, "beta is not in the array's field");
    if (d == 1 && sc.beta == f.from_int(-2)) throw Error(ErrorCode::InvalidArgument, "beta = -2 with d = 1 gives rho = 0");

    FieldElement zsq;
    const FieldElement four = f.from_int(4);
    switch (sc.which()) {
        case TripleCase::BetaTwo:
        case TripleCase::BetaMinusTwo:
            sc.h = th[0] / f.from_int(dd);
            sc.rho = four * sc.h * sc.h;
            zsq = sc.which() == TripleCase::BetaTwo ? -sc.rho : sc.rho;
            break;
        case TripleCase::Generic: {
            sc.q = q_from_beta(sc.beta);
            if (!sc.q)
                throw Error(ErrorCode::NoSquareRootInField,
                            "no q with q^2 + q^-2 = " + sc.beta.to_string() + " in " + f.spec() + "; " +
                                root_hint(sc.beta * sc.beta - four));
            const FieldElement& q = *sc.q;
            FieldElement den = q.pow(dd) - q.pow(-dd);
            if (den.is_zero()) throw Error(ErrorCode::InvalidArgument, "q^d = q^-d for beta " + sc.beta.to_string());
            sc.h = th[0] / den;
            FieldElement w = q.pow(2) - q.pow(-2);
            sc.rho = sc.h * sc.h * w * w;
            zsq = sc.rho / (four - sc.beta * sc.beta);
            break;
        }
    }
    for (std::size_t i = 0; i <= d; ++i) {
        const long long ii = static_cast<long long>(i);
        FieldElement expect;
        switch (sc.which()) {
            case TripleCase::BetaTwo:
                expect = sc.h * f.from_int(dd - 2 * ii);
                break;
            case TripleCase::BetaMinusTwo:
                expect = sc.h * f.from_int(ii % 2 == 0 ? dd - 2 * ii : 2 * ii - dd);
                break;
            case TripleCase::Generic:
                expect = sc.h * (sc.q->pow(dd - 2 * ii) - sc.q->pow(2 * ii - dd));
                break;
        }
        if (th[i] != expect)
            throw Error(ErrorCode::RelationViolation, "th_" + num(i) + " does not have the closed form for beta " + sc.beta.to_string());
    }
    if (aw_sequence(arr, sc.beta).rho != sc.rho) throw Error(ErrorCode::RelationViolation, "rho differs from the closed form");
    auto z = zsq.sqrt();
    if (!z)
        throw Error(ErrorCode::NoSquareRootInField,
                    "z^2 = " + zsq.to_string() + " has no square root in " + f.spec() + "; " + root_hint(zsq));
    sc.z = *z;
    return sc;
}

LeonardTriple build_C(const TBSystem& sys, const TripleScalars& sc) {
    const Field& f = sys.field();
    auto e = rel_coeffs(sc, f);
    const Matrix& A = sys.A;
    const Matrix& B = sys.A_star;
    Matrix C = sc.z.inv() * rel(e, A, B);
    if (rel(e, B, C) != sc.z * A) throw Error(ErrorCode::RelationViolation, "first cyclic relation fails");
    if (rel(e, C, A) != sc.z * B) throw Error(ErrorCode::RelationViolation, "second cyclic relation fails");
    std::vector<Matrix> Epp = lagrange_idempotents(C, sys.theta());
    return LeonardTriple{sys, sc, A, B, std::move(C), sys.E, sys.E_star, std::move(Epp)};
}

LeonardTriple make_triple(const TBSystem& sys, std::optional<FieldElement> beta_hint) {
    return build_C(sys, triple_scalars(sys, std::move(beta_hint)));
}

VerificationReport relations_check(const LeonardTriple& tri) {
    VerificationReport rep("relations");
    const Field& f = tri.sys.field();
    auto e = rel_coeffs(tri.scalars, f);
    const FieldElement& z = tri.scalars.z;
    const char* form = tri.scalars.which() == TripleCase::BetaTwo        ? "[X, Y]"
                       : tri.scalars.which() == TripleCase::BetaMinusTwo ? "{X, Y}"
                                                                         : "(q XY - q^-1 YX)/(q^2 - q^-2)";
    auto one = [&](const char* name, const Matrix& x, const Matrix& y, const Matrix& target, const char* what) {
        CheckBuilder c(name);
        c.equal(rel(e, x, y), z * target, std::string(form) + " with " + what);
        rep.add(std::move(c).done());
    };
    one("relation_1", tri.B, tri.C, tri.A, "X = B, Y = C minus z A");
    one("relation_2", tri.C, tri.A, tri.B, "X = C, Y = A minus z B");
    one("relation_3", tri.A, tri.B, tri.C, "X = A, Y = B minus z C");
    {
        CheckBuilder c("spectral_consistency");
        const Vector& th = tri.sys.theta();
        const std::size_t n = th.size();
        Matrix I = Matrix::identity(f, n);
        c.zero(annihilator_product(tri.A, th), "prod (A - th_i I)");
        c.zero(annihilator_product(tri.B, th), "prod (B - th_i I)");
        c.zero(annihilator_product(tri.C, th), "prod (C - th_i I)");
        for (const auto* fam : {&tri.E, &tri.E_prime, &tri.E_dprime}) {
            Matrix s = Matrix::zero(f, n);
            for (const auto& m : *fam) s += m;
            c.equal(s, I, "idempotent sum - I");
        }
        c.equal(linear_combination(th, tri.E_dprime), tri.C, "sum th_i E''_i - C");
        rep.add(std::move(c).done());
    }
    return rep;
}

Vector t_values(const LeonardTriple& tri) {
    const TripleScalars& sc = tri.scalars;
    const Field& f = tri.sys.field();
    const long long d = static_cast<long long>(tri.sys.d());
    Vector t;
    FieldElement base = sc.which() == TripleCase::Generic ? sc.h / sc.z : f.from_int(2) * sc.h / sc.z;
    for (long long i = 0; i <= d; ++i) {
        FieldElement ti = base.pow(i);
        if (sc.which() == TripleCase::BetaMinusTwo && (i / 2) % 2 == 1) ti = -ti;
        if (sc.which() == TripleCase::Generic) ti *= sc.q->pow(i * (d - i));
        t.push_back(ti);
    }
    return t;
}

FieldElement kappa_value(const LeonardTriple& tri) {
    const TripleScalars& sc = tri.scalars;
    const Field& f = tri.sys.field();
    const long long d = static_cast<long long>(tri.sys.d());
    switch (sc.which()) {
        case TripleCase::BetaTwo:
            return (-sc.z / (f.from_int(2) * sc.h)).pow(d);
        case TripleCase::BetaMinusTwo:
            return f.one();
        case TripleCase::Generic:
            break;
    }
    return (-sc.z / sc.h).pow(d) * sc.q->pow(d * (d - 1));
}

WData assemble_W(const LeonardTriple& tri, const Vector& t) {
    WData w;
    w.t = t;
    w.W = spectral_sum(t, tri.E);
    w.W_prime = spectral_sum(t, tri.E_prime);
    w.W_dprime = spectral_sum(t, tri.E_dprime);
    w.P = w.W_prime * w.W;
    w.kappa = kappa_value(tri);
    bool invertible = true;
    for (const auto& x : t) invertible = invertible && !x.is_zero();
    if (invertible) {
        Vector ti = k_inverse(t);
        w.W_inv = spectral_sum(ti, tri.E);
        w.W_prime_inv = spectral_sum(ti, tri.E_prime);
        w.P_inv = w.W_inv * w.W_prime_inv;
    }
    return w;
}

WData build_W(const LeonardTriple& tri) {
    WData w = assemble_W(tri, t_values(tri));
    Matrix P3 = w.P * w.P * w.P;
    Matrix expect = w.kappa * Matrix::identity(tri.sys.field(), tri.sys.d() + 1);
    if (P3 != expect)
        throw Error(ErrorCode::KappaMismatch, "P^3 differs from kappa I with kappa = " + w.kappa.to_string() + ": " +
                                                  first_nonzero(P3 - expect));
    return w;
}

VerificationReport w_check(const LeonardTriple& tri, const WData& w) {
    VerificationReport rep("W");
    const Field& f = tri.sys.field();
    const std::size_t n = tri.sys.d() + 1;
    const Matrix I = Matrix::identity(f, n);
    {
        CheckBuilder c("W_commutes");
        c.equal(tri.A * w.W, w.W * tri.A, "A W - W A");
        c.equal(tri.B * w.W_prime, w.W_prime * tri.B, "B W' - W' B");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("W_intertwines");
        c.equal(tri.B * w.W, w.W * tri.C, "B W - W C");
        c.equal(tri.C * w.W_prime, w.W_prime * tri.A, "C W' - W' A");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("W_inverse");
        if (c.require(w.P_inv.rows() == n, "some t_i is zero")) {
            c.equal(w.W * w.W_inv, I, "W W^-1 - I");
            c.equal(w.W_prime * w.W_prime_inv, I, "W' W'^-1 - I");
            c.equal(w.P * w.P_inv, I, "P P^-1 - I");
        }
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("W_dagger");
        c.equal(dagger(tri.sys, w.W), w.W, "W^dagger - W");
        c.equal(dagger(tri.sys, w.W_prime), w.W_prime, "W'^dagger - W'");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("P_intertwines");
        c.equal(tri.A * w.P, w.P * tri.B, "A P - P B");
        c.equal(tri.B * w.P, w.P * tri.C, "B P - P C");
        c.equal(tri.C * w.P, w.P * tri.A, "C P - P A");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("P_cube");
        c.require(!w.kappa.is_zero(), "kappa = 0");
        c.equal(w.P * w.P * w.P, w.kappa * I, "P^3 - kappa I, kappa = " + w.kappa.to_string());
        rep.add(std::move(c).done());
    }
    return rep;
}

VerificationReport braid_check(const WData& w) {
    VerificationReport rep("braid");
    auto braid = [&](const char* name, const Matrix& x, const Matrix& y, const char* what) {
        CheckBuilder c(name);
        c.equal(x * y * x, y * x * y, what);
        rep.add(std::move(c).done());
    };
    braid("braid_W_Wp", w.W, w.W_prime, "W W' W - W' W W'");
    braid("braid_Wp_Wpp", w.W_prime, w.W_dprime, "W' W'' W' - W'' W' W''");
    braid("braid_W_Wpp", w.W, w.W_dprime, "W W'' W - W'' W W''");
    CheckBuilder c("P_products");
    c.equal(w.W_prime * w.W, w.P, "W' W - P");
    c.equal(w.W_dprime * w.W_prime, w.P, "W'' W' - P");
    c.equal(w.W * w.W_dprime, w.P, "W W'' - P");
    rep.add(std::move(c).done());
    return rep;
}

Matrix rho_automorphism(const WData& w, const Matrix& x) {
    if (w.P_inv.rows() == 0) throw Error(ErrorCode::Singular, "P is not invertible");
    if (x.rows() != w.P.rows() || x.cols() != w.P.cols()) throw Error(ErrorCode::DimensionMismatch, "rho: size differs from P");
    return w.P_inv * x * w.P;
}

// --------------------------------------------------------------------------- maps

MatrixMap::MatrixMap(const TBSystem& sys, bool anti, Matrix t, Matrix t_inv)
    : k_(sys.k), anti_(anti), t_(std::move(t)), t_inv_(std::move(t_inv)) {
    if (anti_ && k_.size() != sys.d() + 1) throw Error(ErrorCode::Singular, "K is not defined");
}

MatrixMap MatrixMap::identity(const TBSystem& sys) {
    Matrix I = Matrix::identity(sys.field(), sys.d() + 1);
    return MatrixMap(sys, false, I, I);
}

Matrix MatrixMap::apply(const Matrix& x) const { return t_inv_ * (anti_ ? k_transpose(k_, x) : x) * t_; }

Matrix MatrixMap::apply_unit(std::size_t i, std::size_t j) const {
    const std::size_t n = t_.rows();
    std::size_t a = i, b = j;
    FieldElement s = t_.field().one();
    if (anti_) {
        a = j;
        b = i;
        s = k_[i] / k_[j];
    }
    Matrix r(t_.field(), n, n);
    for (std::size_t p = 0; p < n; ++p) {
        if (t_inv_(p, a).is_zero()) continue;
        FieldElement left = s * t_inv_(p, a);
        for (std::size_t q = 0; q < n; ++q)
            if (!t_(b, q).is_zero()) r(p, q) = left * t_(b, q);
    }
    return r;
}

MatrixMap MatrixMap::then(const MatrixMap& next) const {
    MatrixMap r = next;
    if (!next.anti_) {
        r.anti_ = anti_;
        r.t_ = t_ * next.t_;
        r.t_inv_ = next.t_inv_ * t_inv_;
    } else {
        // next(T^-1 Y T) = S^-1 T^dagger Y^dagger (T^-1)^dagger S
        r.anti_ = !anti_;
        r.t_ = k_transpose(next.k_, t_inv_) * next.t_;
        r.t_inv_ = next.t_inv_ * k_transpose(next.k_, t_);
    }
    return r;
}

std::optional<std::pair<std::size_t, std::size_t>> first_unit_difference(const MatrixMap& f, const MatrixMap& g, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (f.apply_unit(i, j) != g.apply_unit(i, j)) return std::make_pair(i, j);
    return std::nullopt;
}

Antiautomorphisms antiautomorphisms(const LeonardTriple& tri, const WData& w) {
    const TBSystem& sys = tri.sys;
    if (w.P_inv.rows() == 0) throw Error(ErrorCode::Singular, "P is not invertible");
    Matrix I = Matrix::identity(sys.field(), sys.d() + 1);
    Matrix Pd = dagger(sys, w.P), Pid = dagger(sys, w.P_inv);
    Matrix T3 = w.W * w.W_prime * w.W;
    Matrix T3i = w.W_inv * w.W_prime_inv * w.W_inv;
    return Antiautomorphisms{
        MatrixMap(sys, true, I, I),
        MatrixMap(sys, true, Pd * w.P, w.P_inv * Pid),
        MatrixMap(sys, true, Pid * w.P_inv, w.P * Pd),
        MatrixMap(sys, true, w.W, w.W_inv),
        MatrixMap(sys, true, w.W_prime_inv, w.W_prime),
        MatrixMap(sys, true, T3, T3i),
    };
}

MatrixMap rho_map(const LeonardTriple& tri, const WData& w) {
    if (w.P_inv.rows() == 0) throw Error(ErrorCode::Singular, "P is not invertible");
    return MatrixMap(tri.sys, false, w.P, w.P_inv);
}

MatrixMap sigma_map(const LeonardTriple& tri, const WData& w) {
    if (w.P_inv.rows() == 0) throw Error(ErrorCode::Singular, "P is not invertible");
    Matrix T = w.W * w.W_prime * w.W;
    Matrix Ti = w.W_inv * w.W_prime_inv * w.W_inv;
    return MatrixMap(tri.sys, false, Ti, T);
}

VerificationReport rho_check(const LeonardTriple& tri, const WData& w) {
    VerificationReport rep("rho");
    const std::size_t n = tri.sys.d() + 1;
    if (w.P_inv.rows() == 0) {
        for (const char* name : {"rho_ABC", "rho_idempotents", "rho_W", "rho_fixes_P", "rho_cubed"})
            rep.add(name, false, "P is not invertible");
        return rep;
    }
    auto rho = [&](const Matrix& x) { return rho_automorphism(w, x); };
    {
        CheckBuilder c("rho_ABC");
        c.equal(rho(tri.A), tri.B, "rho(A) - B");
        c.equal(rho(tri.B), tri.C, "rho(B) - C");
        c.equal(rho(tri.C), tri.A, "rho(C) - A");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("rho_idempotents");
        for (std::size_t i = 0; i < n; ++i) {
            c.equal(rho(tri.E[i]), tri.E_prime[i], "rho(E_" + num(i) + ") - E'_" + num(i));
            c.equal(rho(tri.E_prime[i]), tri.E_dprime[i], "rho(E'_" + num(i) + ") - E''_" + num(i));
            c.equal(rho(tri.E_dprime[i]), tri.E[i], "rho(E''_" + num(i) + ") - E_" + num(i));
        }
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("rho_W");
        c.equal(rho(w.W), w.W_prime, "rho(W) - W'");
        c.equal(rho(w.W_prime), w.W_dprime, "rho(W') - W''");
        c.equal(rho(w.W_dprime), w.W, "rho(W'') - W");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("rho_fixes_P");
        c.equal(rho(w.P), w.P, "rho(P) - P");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("rho_cubed");
        MatrixMap r = rho_map(tri, w);
        unit_equal(c, r.then(r).then(r), MatrixMap::identity(tri.sys), n, "rho^3");
        rep.add(std::move(c).done());
    }
    return rep;
}

VerificationReport antiautomorphism_check(const LeonardTriple& tri, const WData& w) {
    VerificationReport rep("antiautomorphisms");
    const std::size_t n = tri.sys.d() + 1;
    const char* names[] = {"dagger_table", "ddagger_table", "ddagger_squares", "rho_compositions", "conjugation_identities"};
    if (w.P_inv.rows() == 0 || tri.sys.k.size() != n) {
        for (const char* name : names) rep.add(name, false, "P or K is not invertible");
        return rep;
    }
    Antiautomorphisms m = antiautomorphisms(tri, w);
    const Matrix &A = tri.A, &B = tri.B, &C = tri.C;
    const TripleScalars& sc = tri.scalars;
    {
        CheckBuilder c("dagger_table");
        switch (sc.which()) {
            case TripleCase::BetaTwo:
                c.equal(m.dagger.apply(A), A, "A^dagger - A");
                c.equal(m.dagger.apply(B), B, "B^dagger - B");
                c.equal(m.dagger.apply(C), -C, "C^dagger + C");
                c.equal(m.dagger_p.apply(B), B, "B^dagger' - B");
                c.equal(m.dagger_p.apply(C), C, "C^dagger' - C");
                c.equal(m.dagger_p.apply(A), -A, "A^dagger' + A");
                c.equal(m.dagger_pp.apply(C), C, "C^dagger'' - C");
                c.equal(m.dagger_pp.apply(A), A, "A^dagger'' - A");
                c.equal(m.dagger_pp.apply(B), -B, "B^dagger'' + B");
                break;
            case TripleCase::BetaMinusTwo:
                unit_equal(c, m.dagger_p, m.dagger, n, "dagger' vs dagger");
                unit_equal(c, m.dagger_pp, m.dagger, n, "dagger'' vs dagger");
                c.equal(m.dagger.apply(A), A, "A^dagger - A");
                c.equal(m.dagger.apply(B), B, "B^dagger - B");
                c.equal(m.dagger.apply(C), C, "C^dagger - C");
                break;
            case TripleCase::Generic: {
                const FieldElement& q = *sc.q;
                FieldElement s = (sc.z * (q - q.inv())).inv();
                c.equal(m.dagger.apply(A), A, "A^dagger - A");
                c.equal(m.dagger.apply(B), B, "B^dagger - B");
                c.equal(m.dagger.apply(C), C - s * commutator(A, B), "C^dagger - (C - [A, B]/(z(q - q^-1)))");
                c.equal(m.dagger_p.apply(B), B, "B^dagger' - B");
                c.equal(m.dagger_p.apply(C), C, "C^dagger' - C");
                c.equal(m.dagger_p.apply(A), A - s * commutator(B, C), "A^dagger' - (A - [B, C]/(z(q - q^-1)))");
                c.equal(m.dagger_pp.apply(C), C, "C^dagger'' - C");
                c.equal(m.dagger_pp.apply(A), A, "A^dagger'' - A");
                c.equal(m.dagger_pp.apply(B), B - s * commutator(C, A), "B^dagger'' - (B - [C, A]/(z(q - q^-1)))");
                break;
            }
        }
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("ddagger_table");
        c.equal(m.ddagger.apply(A), A, "A^ddagger - A");
        c.equal(m.ddagger.apply(B), C, "B^ddagger - C");
        c.equal(m.ddagger.apply(C), B, "C^ddagger - B");
        c.equal(m.ddagger_p.apply(B), B, "B^ddagger' - B");
        c.equal(m.ddagger_p.apply(C), A, "C^ddagger' - A");
        c.equal(m.ddagger_p.apply(A), C, "A^ddagger' - C");
        c.equal(m.ddagger_pp.apply(C), C, "C^ddagger'' - C");
        c.equal(m.ddagger_pp.apply(A), B, "A^ddagger'' - B");
        c.equal(m.ddagger_pp.apply(B), A, "B^ddagger'' - A");
        rep.add(std::move(c).done());
    }
    MatrixMap id = MatrixMap::identity(tri.sys);
    {
        CheckBuilder c("ddagger_squares");
        unit_equal(c, m.ddagger.then(m.ddagger), id, n, "ddagger^2");
        unit_equal(c, m.ddagger_p.then(m.ddagger_p), id, n, "ddagger'^2");
        unit_equal(c, m.ddagger_pp.then(m.ddagger_pp), id, n, "ddagger''^2");
        rep.add(std::move(c).done());
    }
    MatrixMap rho = rho_map(tri, w);
    MatrixMap rho_inv(tri.sys, false, w.P_inv, w.P);
    {
        CheckBuilder c("rho_compositions");
        unit_equal(c, m.ddagger_p.then(m.ddagger), rho, n, "ddagger' then ddagger");
        unit_equal(c, m.ddagger_pp.then(m.ddagger_p), rho, n, "ddagger'' then ddagger'");
        unit_equal(c, m.ddagger.then(m.ddagger_pp), rho, n, "ddagger then ddagger''");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("conjugation_identities");
        unit_equal(c, rho_inv.then(m.dagger).then(rho), m.dagger_p, n, "rho^-1, dagger, rho vs dagger'");
        unit_equal(c, rho.then(m.dagger).then(rho_inv), m.dagger_pp, n, "rho, dagger, rho^-1 vs dagger''");
        unit_equal(c, rho_inv.then(m.ddagger).then(rho), m.ddagger_p, n, "rho^-1, ddagger, rho vs ddagger'");
        unit_equal(c, rho.then(m.ddagger).then(rho_inv), m.ddagger_pp, n, "rho, ddagger, rho^-1 vs ddagger''");
        rep.add(std::move(c).done());
    }
    return rep;
}

std::string reduce_psl2z_word(const std::string& word) {
    std::string out;
    for (char ch : word) {
        if (ch != 'r' && ch != 's') throw Error(ErrorCode::ParseError, std::string("letter '") + ch + "' is not r or s");
        if (ch == 's' && !out.empty() && out.back() == 's') {
            out.pop_back();
        } else if (ch == 'r' && out.size() >= 2 && out.compare(out.size() - 2, 2, "rr") == 0) {
            out.resize(out.size() - 2);
        } else {
            out.push_back(ch);
        }
    }
    return out;
}

MatrixMap word_map(const std::string& word, const MatrixMap& r, const MatrixMap& s, const TBSystem& sys) {
    MatrixMap m = MatrixMap::identity(sys);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (*it == 'r')
            m = m.then(r);
        else if (*it == 's')
            m = m.then(s);
        else
            throw Error(ErrorCode::ParseError, std::string("letter '") + *it + "' is not r or s");
    }
    return m;
}

VerificationReport sigma_psl2z_check(const LeonardTriple& tri, const WData& w) {
    VerificationReport rep("sigma_psl2z");
    const std::size_t n = tri.sys.d() + 1;
    if (w.P_inv.rows() == 0 || tri.sys.k.size() != n) {
        for (const char* name : {"sigma_swaps", "sigma_C", "sigma_squared", "sigma_composition", "rho_cubed", "psl2z_words"})
            rep.add(name, false, "P or K is not invertible");
        return rep;
    }
    MatrixMap sigma = sigma_map(tri, w);
    MatrixMap rho = rho_map(tri, w);
    MatrixMap id = MatrixMap::identity(tri.sys);
    {
        CheckBuilder c("sigma_swaps");
        c.equal(sigma.apply(tri.A), tri.B, "sigma(A) - B");
        c.equal(sigma.apply(tri.B), tri.A, "sigma(B) - A");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("sigma_C");
        c.equal(sigma.apply(tri.C), dagger(tri.sys, tri.C), "sigma(C) - C^dagger");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("sigma_squared");
        unit_equal(c, sigma.then(sigma), id, n, "sigma^2");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("sigma_composition");
        Antiautomorphisms m = antiautomorphisms(tri, w);
        unit_equal(c, m.ddagger_pp.then(m.dagger), sigma, n, "ddagger'' then dagger vs sigma");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("rho_cubed");
        unit_equal(c, rho.then(rho).then(rho), id, n, "rho^3");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("psl2z_words");
        std::mt19937_64 g(n);
        std::vector<std::string> words{"rrr", "ss", "srrrs", "rsssr", "rrsrrrsr"};
        for (int k = 0; k < 4; ++k) {
            std::string wd;
            for (int l = 0; l < 6; ++l) wd.push_back(g() % 2 ? 'r' : 's');
            for (int ins = 0; ins < 2; ++ins) wd.insert(g() % (wd.size() + 1), g() % 2 ? "rrr" : "ss");
            words.push_back(wd);
        }
        for (const auto& wd : words) {
            std::string red = reduce_psl2z_word(wd);
            unit_equal(c, word_map(wd, rho, sigma, tri.sys), word_map(red, rho, sigma, tri.sys), n,
                       "word " + wd + " vs reduced '" + red + "'");
        }
        rep.add(std::move(c).done());
    }
    return rep;
}

}  // namespace tbtd
