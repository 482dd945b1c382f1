#pragma once

#include <cstddef>
#include <vector>

#include "tbtd/field.hpp"

namespace tbtd {

using Vector = std::vector<FieldElement>;

/// Dense row-major matrix over a single Field.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field field, std::size_t rows, std::size_t cols);

    static Matrix zero(Field field, std::size_t n) { return Matrix(field, n, n); }
    static Matrix identity(Field field, std::size_t n);
    static Matrix diag(Field field, const Vector& entries);
    /// e_{ij}: one at (i, j), zero elsewhere.
    static Matrix unit(Field field, std::size_t n, std::size_t i, std::size_t j);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const FieldElement& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    FieldElement& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const std::vector<FieldElement>& entries() const { return e_; }

    bool is_zero() const;
    bool is_diagonal() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix operator-() const;
    Matrix transpose() const;
    Matrix pow(unsigned n) const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    Field field_ = Field::rationals();
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> e_;
};

Matrix operator+(Matrix x, const Matrix& y);
Matrix operator-(Matrix x, const Matrix& y);
Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator*(const FieldElement& c, const Matrix& x);
Vector operator*(const Matrix& x, const Vector& v);

/// [X, Y] = XY - YX
Matrix commutator(const Matrix& x, const Matrix& y);
/// XY + YX
Matrix anticommutator(const Matrix& x, const Matrix& y);

/// Exact Gauss-Jordan inverse; throws Singular.
Matrix inverse(const Matrix& x);

/// Rank of the row space of a list of vectors of equal length.
std::size_t rank(const std::vector<Vector>& rows);
/// Rank of the matrix (as a list of its rows).
std::size_t rank(const Matrix& x);

/// sum_k coeffs[k] X^k by Horner's scheme.
Matrix poly_eval(const Vector& coeffs, const Matrix& x);

/// Coefficients (constant first) of prod_i (x - roots[i]).
Vector poly_from_roots(const Field& field, const Vector& roots);

/// prod_i (X - eigenvalues[i] I).
Matrix annihilator_product(const Matrix& x, const Vector& eigenvalues);

/// Primitive idempotents E_i = prod_{j != i} (X - th_j I) / (th_i - th_j).
/// Throws DuplicateEigenvalue, or NotAnnihilated when check is set.
std::vector<Matrix> lagrange_idempotents(const Matrix& x, const Vector& eigenvalues, bool check = true);

/// sum_i c_i M_i for matrices of equal shape.
Matrix linear_combination(const Vector& coeffs, const std::vector<Matrix>& mats);

/// Dimension of the unital algebra generated by the n x n generators.
std::size_t algebra_dimension(const std::vector<Matrix>& generators, std::size_t n);

}  // namespace tbtd
