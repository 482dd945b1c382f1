#include "tbtd/matrix.hpp"

#include <cstdint>
#include <deque>
#include <optional>

namespace tbtd {

namespace {

void require_same(const Matrix& x, const Matrix& y) {
    if (x.field() != y.field()) throw Error(ErrorCode::FieldMismatch, "matrices over different fields");
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
}

void require_square(const Matrix& x) {
    if (!x.is_square()) throw Error(ErrorCode::DimensionMismatch, "square matrix required");
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), e_(rows * cols, field.zero()) {}

Matrix Matrix::identity(Field field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
}

Matrix Matrix::diag(Field field, const Vector& entries) {
    Matrix m(field, entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].field() != field) throw Error(ErrorCode::FieldMismatch, "diagonal entry from another field");
        m(i, i) = entries[i];
    }
    return m;
}

Matrix Matrix::unit(Field field, std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(field, n, n);
    m(i, j) = field.one();
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    require_same(*this, o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    require_same(*this, o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
}

Matrix Matrix::operator-() const {
    Matrix m = *this;
    for (auto& x : m.e_) x = -x;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Matrix Matrix::pow(unsigned n) const {
    require_square(*this);
    Matrix result = identity(field_, rows_);
    Matrix base = *this;
    while (n > 0) {
        if (n & 1u) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

bool Matrix::operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }

Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.field() != y.field()) throw Error(ErrorCode::FieldMismatch, "matrices over different fields");
    if (x.cols() != y.rows()) throw Error(ErrorCode::DimensionMismatch, "inner dimensions differ");
    Matrix r(x.field(), x.rows(), y.cols());
    mpq_class tmp;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) {
            const FieldElement& a = x(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < y.cols(); ++j) {
                const FieldElement& b = y(k, j);
                if (!b.is_zero()) mul_add(r(i, j), a, b, tmp);
            }
        }
    return r;
}

Matrix operator*(const FieldElement& c, const Matrix& x) {
    if (c.field() != x.field()) throw Error(ErrorCode::FieldMismatch, "scalar from another field");
    Matrix r = x;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) *= c;
    return r;
}

Vector operator*(const Matrix& x, const Vector& v) {
    if (x.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "vector length differs");
    Vector r(x.rows(), x.field().zero());
    mpq_class tmp;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k)
            if (!x(i, k).is_zero()) mul_add(r[i], x(i, k), v[k], tmp);
    return r;
}

Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }
Matrix anticommutator(const Matrix& x, const Matrix& y) { return x * y + y * x; }

Matrix inverse(const Matrix& x) {
    require_square(x);
    const std::size_t n = x.rows();
    Matrix a = x;
    Matrix inv = Matrix::identity(x.field(), n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) throw Error(ErrorCode::Singular, "matrix is not invertible");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        FieldElement s = a(col, col).inv();
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= s;
            inv(col, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col).is_zero()) continue;
            FieldElement f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                if (!a(col, j).is_zero()) a(i, j) -= f * a(col, j);
                if (!inv(col, j).is_zero()) inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

std::size_t rank(const std::vector<Vector>& rows_in) {
    std::vector<Vector> rows = rows_in;
    if (rows.empty()) return 0;
    const std::size_t m = rows[0].size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < m && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        FieldElement s = rows[r][col].inv();
        for (std::size_t j = col; j < m; ++j) rows[r][j] *= s;
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][col].is_zero()) continue;
            FieldElement f = rows[i][col];
            for (std::size_t j = col; j < m; ++j)
                if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

std::size_t rank(const Matrix& x) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < x.rows(); ++i)
        rows.emplace_back(x.entries().begin() + i * x.cols(), x.entries().begin() + (i + 1) * x.cols());
    return rank(rows);
}

Matrix poly_eval(const Vector& coeffs, const Matrix& x) {
    require_square(x);
    const std::size_t n = x.rows();
    Matrix r(x.field(), n, n);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        r = r * x;
        for (std::size_t i = 0; i < n; ++i) r(i, i) += coeffs[k];
    }
    return r;
}

Vector poly_from_roots(const Field& field, const Vector& roots) {
    Vector c{field.one()};
    for (const auto& t : roots) {
        Vector next(c.size() + 1, field.zero());
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= t * c[k];
        }
        c = std::move(next);
    }
    return c;
}

namespace {

Matrix shifted(const Matrix& x, const FieldElement& t) {
    Matrix m = x;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= t;
    return m;
}

}  // namespace

Matrix annihilator_product(const Matrix& x, const Vector& eigenvalues) {
    require_square(x);
    Matrix p = Matrix::identity(x.field(), x.rows());
    for (const auto& t : eigenvalues) p = p * shifted(x, t);
    return p;
}

std::vector<Matrix> lagrange_idempotents(const Matrix& x, const Vector& th, bool check) {
    require_square(x);
    const std::size_t m = th.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (th[i] == th[j]) throw Error(ErrorCode::DuplicateEigenvalue, "eigenvalue " + th[i].to_string() + " repeated");
    const std::size_t n = x.rows();
    std::vector<Matrix> prefix(m + 1), suffix(m + 1);
    prefix[0] = Matrix::identity(x.field(), n);
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] * shifted(x, th[i]);
    if (check && !prefix[m].is_zero()) throw Error(ErrorCode::NotAnnihilated, "prod (X - th_i I) is nonzero");
    suffix[m] = Matrix::identity(x.field(), n);
    for (std::size_t i = m; i-- > 0;) suffix[i] = shifted(x, th[i]) * suffix[i + 1];
    std::vector<Matrix> e;
    e.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        FieldElement denom = x.field().one();
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) denom *= th[i] - th[j];
        e.push_back(denom.inv() * (prefix[i] * suffix[i + 1]));
    }
    return e;
}

Matrix linear_combination(const Vector& coeffs, const std::vector<Matrix>& mats) {
    if (coeffs.size() != mats.size() || mats.empty())
        throw Error(ErrorCode::DimensionMismatch, "coefficient and matrix counts differ");
    Matrix r(mats[0].field(), mats[0].rows(), mats[0].cols());
    for (std::size_t k = 0; k < mats.size(); ++k)
        if (!coeffs[k].is_zero()) r += coeffs[k] * mats[k];
    return r;
}

// ---------------------------------------------------------------------------
// algebra_dimension
//
// Words in the generators are enumerated breadth first; a word is extended
// only when it is independent of the words kept so far.  Over Q and Q(sqrt D)
// the closure first runs in a word-size prime field through a ring map: kept
// words have independent images, so reaching n^2 there proves the exact
// dimension is n^2.  Any shortfall is settled by the exact closure.

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

struct ModImage {
    u64 p = 0;
    std::vector<std::vector<u64>> mats;
};

std::optional<u64> rat_mod(const mpq_class& x, u64 p) {
    u64 den = mpz_fdiv_ui(x.get_den_mpz_t(), p);
    if (den == 0) return std::nullopt;
    u64 nm = mpz_fdiv_ui(x.get_num_mpz_t(), p);
    return mulmod(nm, powmod(den, p - 2, p), p);
}

std::optional<ModImage> try_image(const std::vector<Matrix>& gens, u64 p, u64 s) {
    ModImage img;
    img.p = p;
    for (const auto& g : gens) {
        std::vector<u64> v;
        v.reserve(g.entries().size());
        for (const auto& x : g.entries()) {
            auto a = rat_mod(x.a(), p);
            if (!a) return std::nullopt;
            u64 val = *a;
            if (sgn(x.b()) != 0) {
                auto b = rat_mod(x.b(), p);
                if (!b) return std::nullopt;
                val = (val + mulmod(*b, s, p)) % p;
            }
            v.push_back(val);
        }
        img.mats.push_back(std::move(v));
    }
    return img;
}

// Returns (image, exact) where exact means the image field is the field itself.
std::optional<std::pair<ModImage, bool>> modular_image(const std::vector<Matrix>& gens, const Field& f) {
    if (f.is_prime_base()) {
        if (f.is_extension() || mpz_sizeinbase(f.characteristic().get_mpz_t(), 2) > 62) return std::nullopt;
        auto img = try_image(gens, f.characteristic().get_ui(), 0);
        if (!img) return std::nullopt;
        return std::make_pair(*img, true);
    }
    mpz_class cand = mpz_class("2305843009213693951");  // 2^61 - 1
    for (int attempt = 0; attempt < 64; ++attempt, mpz_nextprime(cand.get_mpz_t(), cand.get_mpz_t())) {
        u64 p = cand.get_ui();
        u64 s = 0;
        if (f.is_extension()) {
            mpq_class D = f.ext_d().a();
            mpz_class dm = D.get_num() * D.get_den();
            dm %= cand;
            if (dm < 0) dm += cand;
            if (dm == 0 || mpz_legendre(dm.get_mpz_t(), cand.get_mpz_t()) != 1) continue;
            // sqrt(D) = sqrt(num * den) / den
            FieldElement root = Field::prime(cand).from_mpz(dm).sqrt().value();
            s = root.a().get_num().get_ui();
            auto dinv = rat_mod(mpq_class(1, 1) / mpq_class(D.get_den()), p);
            if (!dinv) continue;
            s = mulmod(s, *dinv, p);
        }
        if (auto img = try_image(gens, p, s)) return std::make_pair(*img, false);
    }
    return std::nullopt;
}

std::vector<u64> mat_mul_mod(const std::vector<u64>& x, const std::vector<u64>& y, std::size_t n, u64 p) {
    std::vector<u64> r(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            u64 a = x[i * n + k];
            if (!a) continue;
            for (std::size_t j = 0; j < n; ++j) {
                u64 b = y[k * n + j];
                if (b) r[i * n + j] = (r[i * n + j] + mulmod(a, b, p)) % p;
            }
        }
    return r;
}

std::size_t closure_mod(const ModImage& img, std::size_t n) {
    const std::size_t n2 = n * n;
    const u64 p = img.p;
    std::vector<std::vector<u64>> basis;
    std::vector<std::size_t> pivots;
    std::deque<std::vector<u64>> queue;
    std::vector<u64> id(n2, 0);
    for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;
    queue.push_back(std::move(id));
    while (!queue.empty() && basis.size() < n2) {
        std::vector<u64> w = std::move(queue.front());
        queue.pop_front();
        std::vector<u64> v = w;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            u64 c = v[pivots[k]];
            if (!c) continue;
            u64 neg = p - c;
            const auto& row = basis[k];
            for (std::size_t j = 0; j < n2; ++j)
                if (row[j]) v[j] = (v[j] + mulmod(neg, row[j], p)) % p;
        }
        std::size_t piv = 0;
        while (piv < n2 && v[piv] == 0) ++piv;
        if (piv == n2) continue;
        u64 s = powmod(v[piv], p - 2, p);
        for (auto& x : v) x = mulmod(x, s, p);
        basis.push_back(std::move(v));
        pivots.push_back(piv);
        for (const auto& g : img.mats) queue.push_back(mat_mul_mod(w, g, n, p));
    }
    return basis.size();
}

std::size_t closure_exact(const std::vector<Matrix>& gens, const Field& f, std::size_t n) {
    const std::size_t n2 = n * n;
    std::vector<Vector> basis;
    std::vector<std::size_t> pivots;
    std::deque<Matrix> queue;
    queue.push_back(Matrix::identity(f, n));
    while (!queue.empty() && basis.size() < n2) {
        Matrix w = std::move(queue.front());
        queue.pop_front();
        Vector v = w.entries();
        for (std::size_t k = 0; k < basis.size(); ++k) {
            FieldElement c = v[pivots[k]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < n2; ++j)
                if (!basis[k][j].is_zero()) v[j] -= c * basis[k][j];
        }
        std::size_t piv = 0;
        while (piv < n2 && v[piv].is_zero()) ++piv;
        if (piv == n2) continue;
        FieldElement s = v[piv].inv();
        for (auto& x : v) x *= s;
        basis.push_back(std::move(v));
        pivots.push_back(piv);
        for (const auto& g : gens) queue.push_back(w * g);
    }
    return basis.size();
}

}  // namespace

std::size_t algebra_dimension(const std::vector<Matrix>& generators, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::DimensionMismatch, "n must be positive");
    Field f = generators.empty() ? Field::rationals() : generators[0].field();
    for (const auto& g : generators) {
        if (g.rows() != n || g.cols() != n) throw Error(ErrorCode::DimensionMismatch, "generator is not n x n");
        if (g.field() != f) throw Error(ErrorCode::FieldMismatch, "generators over different fields");
    }
    if (generators.empty()) return 1;
    if (auto img = modular_image(generators, f)) {
        std::size_t dim = closure_mod(img->first, n);
        if (img->second || dim == n * n) return dim;
    }
    return closure_exact(generators, f, n);
}

}  // namespace tbtd
