#include "tbtd/system.hpp"

#include <random>

namespace tbtd {

namespace {

std::string idx(const std::string& name, std::size_t i) { return name + "_" + std::to_string(i); }

FieldElement sign(const Field& f, std::size_t i) { return i % 2 == 0 ? f.one() : -f.one(); }

/// X * diag(v)
Matrix scale_cols(const Matrix& x, const Vector& v) {
    Matrix r = x;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            if (!r(i, j).is_zero()) r(i, j) *= v[j];
    return r;
}

/// diag(v) * X
Matrix scale_rows(const Vector& v, const Matrix& x) {
    Matrix r = x;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            if (!r(i, j).is_zero()) r(i, j) *= v[i];
    return r;
}

Matrix sum_of(const std::vector<Matrix>& xs) {
    Matrix r = Matrix::zero(xs[0].field(), xs[0].rows());
    for (const auto& x : xs) r += x;
    return r;
}

Vector dual_c(const Vector& th, const Vector& ts, std::size_t d) {
    // c_i from (th; th*), c_d = th_0
    Vector c(d);
    for (std::size_t i = 1; i < d; ++i) {
        FieldElement den = ts[i - 1] - ts[i + 1];
        if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "th*_" + std::to_string(i - 1) + " = th*_" + std::to_string(i + 1));
        c[i - 1] = (th[1] * ts[i] - th[0] * ts[i + 1]) / den;
    }
    c[d - 1] = th[0];
    return c;
}

Vector dual_b(const Vector& th, const Vector& ts, std::size_t d) {
    Vector b(d);
    b[0] = th[0];
    for (std::size_t i = 1; i < d; ++i) {
        FieldElement den = ts[i + 1] - ts[i - 1];
        if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "th*_" + std::to_string(i + 1) + " = th*_" + std::to_string(i - 1));
        b[i] = (th[1] * ts[i] - th[0] * ts[i - 1]) / den;
    }
    return b;
}

void check_numbers(const Vector& c, const Vector& b, const FieldElement& th0, const char* tag) {
    const std::size_t d = c.size();
    auto bad = [&](const std::string& m) { throw Error(ErrorCode::RelationViolation, std::string(tag) + ": " + m); };
    for (std::size_t i = 0; i < d; ++i)
        if (c[i].is_zero() || b[i].is_zero()) bad("zero intersection number");
    for (std::size_t i = 1; i <= d; ++i)
        if (c[i - 1] != b[d - i]) bad("c_" + std::to_string(i) + " != b_" + std::to_string(d - i));
    for (std::size_t i = 1; i < d; ++i)
        if (c[i - 1] + b[i] != th0) bad("c_" + std::to_string(i) + " + b_" + std::to_string(i) + " != th_0");
}

Matrix random_matrix(const Field& f, std::size_t n, std::mt19937_64& g) {
    std::uniform_int_distribution<long long> dist(-9, 9);
    Matrix x(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            x(i, j) = f.from_int(dist(g));
            if (f.is_extension()) x(i, j) += f.from_int(dist(g)) * f.sqrt_d();
        }
    return x;
}

}  // namespace

IntersectionNumbers intersection_numbers(const EigenvalueArray& arr) {
    const std::size_t d = arr.d();
    const Vector& th = arr.theta();
    const Vector& ts = arr.theta_star();
    IntersectionNumbers n{dual_c(th, ts, d), dual_b(th, ts, d), dual_c(ts, th, d), dual_b(ts, th, d)};
    check_numbers(n.c, n.b, th[0], "intersection numbers");
    check_numbers(n.c_star, n.b_star, ts[0], "dual intersection numbers");
    return n;
}

TBSystem assemble_system(const EigenvalueArray& arr, const IntersectionNumbers& in) {
    const std::size_t d = arr.d(), n = d + 1;
    const Field& f = arr.field();
    if (in.c.size() != d || in.b.size() != d)
        throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(d) + " intersection numbers");
    Matrix A = Matrix::zero(f, n);
    for (std::size_t i = 1; i <= d; ++i) {
        A(i, i - 1) = in.c[i - 1];
        A(i - 1, i) = in.b[i - 1];
    }
    Matrix As = Matrix::diag(f, arr.theta_star());
    std::vector<Matrix> E = lagrange_idempotents(A, arr.theta(), false);
    std::vector<Matrix> Es;
    for (std::size_t i = 0; i < n; ++i) Es.push_back(Matrix::unit(f, n, i, i));

    Vector k{f.one()};
    for (std::size_t i = 1; i <= d && !k.empty(); ++i) {
        if (in.c[i - 1].is_zero()) {
            k.clear();
            break;
        }
        k.push_back(k.back() * in.b[i - 1] / in.c[i - 1]);
    }
    Matrix K = k.empty() ? Matrix() : Matrix::diag(f, k);

    Matrix S = Matrix::zero(f, n);
    Vector signs;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % 2 == 0)
            S += E[i];
        else
            S -= E[i];
        signs.push_back(sign(f, i));
    }
    return TBSystem{arr, in, std::move(A), std::move(As), std::move(E), std::move(Es), std::move(k), std::move(K),
                    std::move(S), Matrix::diag(f, signs)};
}

TBSystem build_system(const EigenvalueArray& arr) {
    TBSystem sys = assemble_system(arr, intersection_numbers(arr));
    const Field& f = arr.field();
    const std::size_t n = sys.d() + 1;
    auto bad = [](const std::string& m) { throw Error(ErrorCode::RelationViolation, m); };
    if (!annihilator_product(sys.A, arr.theta()).is_zero()) bad("prod (A - th_i I) != 0");
    Matrix I = Matrix::identity(f, n);
    if (sum_of(sys.E) != I) bad("sum E_i != I");
    if (linear_combination(arr.theta(), sys.E) != sys.A) bad("sum th_i E_i != A");
    if (sys.A.transpose() * sys.K != sys.K * sys.A) bad("A^t K != K A");
    if (sys.S * sys.S != I) bad("S^2 != I");
    Vector signs;
    for (std::size_t i = 0; i < n; ++i) signs.push_back(sign(f, i));
    Matrix lhs = scale_cols(sys.S, signs), rhs = scale_rows(signs, sys.S);
    if (lhs != sign(f, sys.d()) * rhs) bad("S S* != (-1)^d S* S");
    return sys;
}

std::pair<Matrix, Matrix> raising_lowering(const TBSystem& sys) {
    const std::size_t n = sys.d() + 1;
    Matrix R = Matrix::zero(sys.field(), n), L = Matrix::zero(sys.field(), n);
    for (std::size_t i = 1; i < n; ++i) {
        R(i, i - 1) = sys.A(i, i - 1);
        L(i - 1, i) = sys.A(i - 1, i);
    }
    return {R, L};
}

VerificationReport verify_axioms(const TBSystem& sys) {
    VerificationReport rep("axioms");
    const std::size_t d = sys.d(), n = d + 1;
    const Field& f = sys.field();

    {
        CheckBuilder c("diagonalizable");
        c.zero(annihilator_product(sys.A, sys.theta()), "prod (A - th_i I)");
        c.zero(annihilator_product(sys.A_star, sys.theta_star()), "prod (A* - th*_i I)");
        rep.add(std::move(c).done());
    }
    {
        // E*_i A E*_j = A(i, j) e_ij, so its vanishing is that of one entry.
        CheckBuilder c("tridiagonal_pattern");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                bool adj = (i + 1 == j || j + 1 == i);
                std::string w = "E*_" + std::to_string(i) + " A E*_" + std::to_string(j);
                c.require(sys.A(i, j).is_zero() != adj, w + (adj ? " is zero" : " is nonzero"));
            }
        for (std::size_t i = 0; i < n && c.ok(); ++i) {
            Matrix EAs = scale_cols(sys.E[i], sys.theta_star());
            for (std::size_t j = 0; j < n; ++j) {
                bool adj = (i + 1 == j || j + 1 == i);
                Matrix m = EAs * sys.E[j];
                std::string w = "E_" + std::to_string(i) + " A* E_" + std::to_string(j);
                if (adj)
                    c.nonzero(m, w);
                else
                    c.zero(m, w);
            }
        }
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("irreducible");
        for (std::size_t i = 1; i <= d; ++i)
            c.require(!(sys.A(i, i - 1) * sys.A(i - 1, i)).is_zero(),
                      "c_" + std::to_string(i) + " b_" + std::to_string(i - 1) + " = 0");
        rep.add(std::move(c).done());
    }
    {
        std::size_t dim = algebra_dimension({sys.A, sys.A_star}, n);
        rep.add("algebra_generation", dim == n * n,
                "dim <A, A*> = " + std::to_string(dim) + ", expected " + std::to_string(n * n));
    }
    {
        // E*_i A^r E*_j is the (i, j) entry of A^r placed at (i, j).
        CheckBuilder c("rstep_pattern");
        Matrix P = Matrix::identity(f, n);
        for (std::size_t r = 0; r <= d && c.ok(); ++r) {
            if (r > 0) P = P * sys.A;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    std::size_t gap = i > j ? i - j : j - i;
                    std::string w = "E*_" + std::to_string(i) + " A^" + std::to_string(r) + " E*_" + std::to_string(j);
                    if (gap > r) c.require(P(i, j).is_zero(), w + " is nonzero");
                    if (gap == r) c.require(!P(i, j).is_zero(), w + " is zero");
                }
        }
        rep.add(std::move(c).done());
    }
    return rep;
}

VerificationReport verify_aw_relations(const TBSystem& sys, const AskeyWilsonSeq& seq) {
    VerificationReport rep("askey_wilson");
    const Matrix& A = sys.A;
    const Matrix& As = sys.A_star;
    const FieldElement& beta = seq.beta;
    Matrix A2 = A * A, As2 = As * As, AAs = A * As, AsA = As * A;
    {
        CheckBuilder c("aw1");
        c.equal(A2 * As - beta * (AAs * A) + As * A2, seq.rho * As, "A^2 A* - beta A A* A + A* A^2 - rho A*");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("aw2");
        c.equal(As2 * A - beta * (AsA * As) + A * As2, seq.rho_star * A, "A*^2 A - beta A* A A* + A A*^2 - rho* A");
        rep.add(std::move(c).done());
    }
    if (sys.d() == 1) {
        CheckBuilder c("d1_anticommute");
        c.equal(AAs, -AsA, "A A* + A* A");
        rep.add(std::move(c).done());
        CheckBuilder s("d1_square");
        s.equal(A2, (sys.theta()[0] * sys.theta()[0]) * Matrix::identity(sys.field(), 2), "A^2 - th_0^2 I");
        rep.add(std::move(s).done());
    }
    if (sys.d() == 2) {
        CheckBuilder c("d2_AAsA");
        c.zero(AAs * A, "A A* A");
        rep.add(std::move(c).done());
        CheckBuilder s("d2_AsAAs");
        s.zero(AsA * As, "A* A A*");
        rep.add(std::move(s).done());
    }
    return rep;
}

Matrix dagger(const TBSystem& sys, const Matrix& x) {
    const std::size_t n = sys.d() + 1;
    if (x.rows() != n || x.cols() != n) throw Error(ErrorCode::DimensionMismatch, "dagger needs a square matrix of size d+1");
    if (x.field() != sys.field()) throw Error(ErrorCode::FieldMismatch, "dagger: field differs from the system's");
    if (sys.k.size() != n) throw Error(ErrorCode::Singular, "K is not defined");
    Vector kinv;
    for (const auto& ki : sys.k) {
        if (ki.is_zero()) throw Error(ErrorCode::Singular, "K is not invertible");
        kinv.push_back(ki.inv());
    }
    Matrix r(sys.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!x(j, i).is_zero()) r(i, j) = kinv[i] * x(j, i) * sys.k[j];
    return r;
}

VerificationReport dagger_check(const TBSystem& sys, std::size_t pairs, std::uint64_t seed) {
    VerificationReport rep("dagger");
    const std::size_t n = sys.d() + 1;
    try {
        (void)dagger(sys, sys.A);
    } catch (const Error& e) {
        for (const char* name : {"dagger_fixes", "dagger_involution", "dagger_antimultiplicative"})
            rep.add(name, false, e.what());
        return rep;
    }
    {
        CheckBuilder c("dagger_fixes");
        c.equal(dagger(sys, sys.A), sys.A, "A^dagger - A");
        c.equal(dagger(sys, sys.A_star), sys.A_star, "A*^dagger - A*");
        for (std::size_t i = 0; i < n; ++i) {
            c.equal(dagger(sys, sys.E[i]), sys.E[i], idx("E", i) + "^dagger - " + idx("E", i));
            c.equal(dagger(sys, sys.E_star[i]), sys.E_star[i], idx("E*", i) + "^dagger - " + idx("E*", i));
        }
        rep.add(std::move(c).done());
    }
    std::mt19937_64 g(seed);
    CheckBuilder inv("dagger_involution"), anti("dagger_antimultiplicative");
    for (std::size_t t = 0; t < pairs; ++t) {
        Matrix X = random_matrix(sys.field(), n, g), Y = random_matrix(sys.field(), n, g);
        Matrix Xd = dagger(sys, X), Yd = dagger(sys, Y);
        inv.equal(dagger(sys, Xd), X, "pair " + std::to_string(t) + ": X^dagger^dagger - X");
        inv.equal(dagger(sys, Yd), Y, "pair " + std::to_string(t) + ": Y^dagger^dagger - Y");
        anti.equal(dagger(sys, X * Y), Yd * Xd, "pair " + std::to_string(t) + ": (XY)^dagger - Y^dagger X^dagger");
    }
    rep.add(std::move(inv).done());
    rep.add(std::move(anti).done());
    return rep;
}

VerificationReport involutions_check(const TBSystem& sys) {
    VerificationReport rep("involutions");
    const std::size_t d = sys.d(), n = d + 1;
    const Field& f = sys.field();
    const Matrix I = Matrix::identity(f, n);
    const Matrix& S = sys.S;
    const Matrix& Ss = sys.S_star;
    auto one = [&](const char* name, const Matrix& l, const Matrix& r, const char* what) {
        CheckBuilder c(name);
        c.equal(l, r, what);
        rep.add(std::move(c).done());
    };
    one("S_squared", S * S, I, "S^2 - I");
    one("Sstar_squared", Ss * Ss, I, "S*^2 - I");
    one("S_A", S * sys.A, sys.A * S, "S A - A S");
    one("S_Astar", S * sys.A_star, -(sys.A_star * S), "S A* + A* S");
    {
        CheckBuilder c("S_Estar");
        for (std::size_t i = 0; i < n; ++i)
            c.equal(S * sys.E_star[i], sys.E_star[d - i] * S, "S E*_" + std::to_string(i) + " - E*_" + std::to_string(d - i) + " S");
        rep.add(std::move(c).done());
    }
    one("Sstar_Astar", Ss * sys.A_star, sys.A_star * Ss, "S* A* - A* S*");
    one("Sstar_A", Ss * sys.A, -(sys.A * Ss), "S* A + A S*");
    {
        CheckBuilder c("Sstar_E");
        for (std::size_t i = 0; i < n; ++i)
            c.equal(Ss * sys.E[i], sys.E[d - i] * Ss, "S* E_" + std::to_string(i) + " - E_" + std::to_string(d - i) + " S*");
        rep.add(std::move(c).done());
    }
    one("SSstar_sign", S * Ss, sign(f, d) * (Ss * S), "S S* - (-1)^d S* S");
    {
        Matrix acc = Matrix::zero(f, n);
        for (std::size_t i = 0; i < n; ++i) {
            Matrix t = sys.E[i] * sys.A_star + sys.A_star * sys.E[i];
            if (i % 2 == 0)
                acc += t;
            else
                acc -= t;
        }
        CheckBuilder c("alternating_sum");
        c.zero(acc, "sum (-1)^i (E_i A* + A* E_i)");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("S_down");
        try {
            TBSystem dn = build_system(relatives(sys.array).down);
            c.equal(S * sys.A * S, dn.A, "S A S - A(down)");
            c.equal(S * sys.A_star * S, dn.A_star, "S A* S - A*(down)");
            for (std::size_t i = 0; i < n; ++i) {
                c.equal(S * sys.E[i] * S, dn.E[i], "S E_" + std::to_string(i) + " S - E_" + std::to_string(i) + "(down)");
                c.equal(S * sys.E_star[d - i] * S, dn.E_star[i],
                        "S E*_" + std::to_string(d - i) + " S - E*_" + std::to_string(i) + "(down)");
            }
        } catch (const Error& e) {
            c.require(false, e.what());
        }
        rep.add(std::move(c).done());
    }
    return rep;
}

VerificationReport structure_check(const TBSystem& sys) {
    VerificationReport rep("structure");
    const std::size_t d = sys.d(), n = d + 1;
    const Field& f = sys.field();
    const Vector& th = sys.theta();
    const Vector& ts = sys.theta_star();
    const Matrix I = Matrix::identity(f, n);
    const Matrix Z = Matrix::zero(f, n);
    {
        CheckBuilder c("spectral");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::string w = "E_" + std::to_string(i) + " E_" + std::to_string(j);
                c.equal(sys.E[i] * sys.E[j], i == j ? sys.E[i] : Z, w);
                c.equal(sys.E_star[i] * sys.E_star[j], i == j ? sys.E_star[i] : Z, "E*_" + std::to_string(i) + " E*_" + std::to_string(j));
            }
        c.equal(sum_of(sys.E), I, "sum E_i - I");
        c.equal(sum_of(sys.E_star), I, "sum E*_i - I");
        c.equal(linear_combination(th, sys.E), sys.A, "sum th_i E_i - A");
        c.equal(linear_combination(ts, sys.E_star), sys.A_star, "sum th*_i E*_i - A*");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("AtK_KA");
        if (c.require(sys.K.rows() == n, "K is not defined")) c.equal(sys.A.transpose() * sys.K, sys.K * sys.A, "A^t K - K A");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("eigenvectors");
        Vector v0(n, f.one()), v1 = ts, vd, vd1;
        for (std::size_t i = 0; i < n; ++i) {
            vd.push_back(sign(f, i));
            vd1.push_back(sign(f, i) * ts[i]);
        }
        auto chk = [&](const Vector& v, const FieldElement& ev, const char* name) {
            Vector av = sys.A * v;
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i) ok = ok && av[i] == ev * v[i];
            c.require(ok, std::string("A ") + name + " != th " + name);
        };
        chk(v0, th[0], "v_0");
        chk(v1, th[1], "v_1");
        chk(vd, th[d], "v_d");
        chk(vd1, th[d - 1], "v_{d-1}");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("raising_lowering");
        auto [R, L] = raising_lowering(sys);
        c.equal(R + L, sys.A, "R + L - A");
        for (std::size_t i = 1; i <= d; ++i) {
            const Matrix& Ei = sys.E_star[i];
            const Matrix& Ep = sys.E_star[i - 1];
            c.equal(Ei * R, Ei * sys.A * Ep, "E*_i R - E*_i A E*_{i-1}, i=" + std::to_string(i));
            c.equal(Ei * R, R * Ep, "E*_i R - R E*_{i-1}, i=" + std::to_string(i));
            c.equal(Ep * L, Ep * sys.A * Ei, "E*_{i-1} L - E*_{i-1} A E*_i, i=" + std::to_string(i));
            c.equal(Ep * L, L * Ei, "E*_{i-1} L - L E*_i, i=" + std::to_string(i));
        }
        c.zero(sys.E_star[0] * R, "E*_0 R");
        c.zero(R * sys.E_star[d], "R E*_d");
        c.zero(sys.E_star[d] * L, "E*_d L");
        c.zero(L * sys.E_star[0], "L E*_0");
        // v_i = E*_i v_0 is the i-th coordinate vector.
        for (std::size_t i = 1; i <= d; ++i) {
            FieldElement ci = i < d ? (th[1] * ts[i] - th[0] * ts[i + 1]) / (ts[i - 1] - ts[i + 1]) : th[0];
            c.require(R(i, i - 1) == ci, "R v_" + std::to_string(i - 1) + " != c_" + std::to_string(i) + " v_" + std::to_string(i));
        }
        c.require(L(0, 1) == th[0], "L v_1 != th_0 v_0");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("boundary_identity");
        std::vector<Matrix> pw{I};
        for (std::size_t r = 1; r <= d; ++r) pw.push_back(pw.back() * sys.A);
        for (std::size_t r = 0; r <= d && c.ok(); ++r)
            for (std::size_t s = 0; r + s <= d && c.ok(); ++s) {
                Matrix M = scale_cols(pw[r], ts) * pw[s];
                const Matrix& P = pw[r + s];
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        std::size_t gap = i > j ? i - j : j - i;
                        std::string w = "E*_" + std::to_string(i) + " A^" + std::to_string(r) + " A* A^" + std::to_string(s) +
                                        " E*_" + std::to_string(j);
                        if (gap > r + s) c.require(M(i, j).is_zero(), w + " is nonzero");
                        if (i >= j && i - j == r + s) c.require(M(i, j) == ts[j + s] * P(i, j), w + " != th*_{j+s} E*_i A^{r+s} E*_j");
                        if (j > i && j - i == r + s) c.require(M(i, j) == ts[i + r] * P(i, j), w + " != th*_{i+r} E*_i A^{r+s} E*_j");
                    }
            }
        rep.add(std::move(c).done());
    }
    {
        std::vector<Vector> rows;
        for (std::size_t i = 1; i <= d; ++i) {
            rows.push_back((scale_cols(sys.E[i - 1], ts) * sys.E[i]).entries());
            rows.push_back((scale_cols(sys.E[i], ts) * sys.E[i - 1]).entries());
        }
        std::size_t rk = rank(rows);
        rep.add("MAsM_basis", rk == 2 * d, "rank " + std::to_string(rk) + ", expected " + std::to_string(2 * d));
    }
    return rep;
}

SdSums sd_sums(const TBSystem& sys) {
    if (!is_self_dual(sys.array)) throw Error(ErrorCode::NotSelfDual, "th != th*");
    const std::size_t d = sys.d(), n = d + 1;
    const Field& f = sys.field();
    const Vector& th = sys.theta();
    const Vector& ts = sys.theta_star();
    const Matrix I = Matrix::identity(f, n);
    // tau_i, eta_i at A and A*
    auto tau = [&](const Matrix& X, const Vector& ev) {
        std::vector<Matrix> t{I};
        for (std::size_t i = 1; i <= d; ++i) t.push_back(t.back() * (X - ev[i - 1] * I));
        return t;
    };
    auto eta = [&](const Matrix& X, const Vector& ev) {
        std::vector<Matrix> t{I};
        for (std::size_t i = 1; i <= d; ++i) t.push_back(t.back() * (X - ev[d - i + 1] * I));
        return t;
    };
    auto T = tau(sys.A, th), H = eta(sys.A, th), Ts = tau(sys.A_star, ts), Hs = eta(sys.A_star, ts);
    const Matrix& E0 = sys.E[0];
    const Matrix& Ed = sys.E[d];
    const Matrix& Es0 = sys.E_star[0];
    const Matrix& Esd = sys.E_star[d];
    Matrix m1 = Es0 * Ed, m2 = E0 * Esd, m3 = Ed * Es0, m4 = Esd * E0;
    SdSums out;
    for (auto& s : out.sum) s = Matrix::zero(f, n);
    for (std::size_t i = 0; i <= d; ++i) {
        out.sum[0] += H[d - i] * m1 * Ts[i];
        out.sum[1] += Hs[d - i] * m2 * T[i];
        out.sum[2] += Ts[i] * m3 * H[d - i];
        out.sum[3] += T[i] * m4 * Hs[d - i];
    }
    return out;
}

Matrix sd_isomorphism(const TBSystem& sys) {
    SdSums s = sd_sums(sys);
    for (int k = 1; k < 4; ++k)
        if (s.sum[k] != s.sum[0]) throw Error(ErrorCode::RelationViolation, "the four sums differ");
    return s.sum[0];
}

VerificationReport sd_isomorphism_check(const TBSystem& sys) {
    VerificationReport rep("sd_isomorphism");
    SdSums s = sd_sums(sys);
    {
        CheckBuilder c("four_sums_equal");
        for (int k = 1; k < 4; ++k) c.equal(s.sum[k], s.sum[0], "sum " + std::to_string(k + 1) + " - sum 1");
        rep.add(std::move(c).done());
    }
    const Matrix& Psi = s.sum[0];
    {
        CheckBuilder c("nonzero");
        c.nonzero(Psi, "Psi");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("intertwines");
        c.equal(Psi * sys.A, sys.A_star * Psi, "Psi A - A* Psi");
        c.equal(Psi * sys.A_star, sys.A * Psi, "Psi A* - A Psi");
        rep.add(std::move(c).done());
    }
    {
        CheckBuilder c("square_scalar");
        Matrix P2 = Psi * Psi;
        FieldElement lam = P2(0, 0);
        c.require(!lam.is_zero(), "Psi^2 (0, 0) = 0");
        c.equal(P2, lam * Matrix::identity(sys.field(), sys.d() + 1), "Psi^2 - lambda I");
        rep.add(std::move(c).done());
    }
    return rep;
}

bool isomorphic(const TBSystem& x, const TBSystem& y) {
    if (x.field() != y.field()) throw Error(ErrorCode::FieldMismatch, "systems over different fields");
    return x.array == y.array;
}

}  // namespace tbtd
