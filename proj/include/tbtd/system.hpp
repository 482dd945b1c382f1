/**
 * @file system.hpp
 * @brief TB tridiagonal systems in the standard basis.
 *
 * For an eigenvalue array the system is realized on F^{d+1} with
 *   A   tridiagonal, zero diagonal, A(i, i-1) = c_i, A(i-1, i) = b_{i-1},
 *   A*  = diag(th*_0, ..., th*_d),
 *   E_i the Lagrange idempotents of A, E*_i the diagonal matrix units,
 *   K   = diag(k_0, ..., k_d) with k_i = b_0 ... b_{i-1} / (c_1 ... c_i),
 *   S   = sum (-1)^i E_i and S* = sum (-1)^i E*_i.
 * The verification functions never throw on a mathematical failure; they
 * record it in a VerificationReport with a witness.
 */
#pragma once

#include <cstdint>
#include <utility>

#include "tbtd/arrays.hpp"
#include "tbtd/report.hpp"

namespace tbtd {

struct IntersectionNumbers {
    Vector c;       ///< c_1 .. c_d, so c[i - 1] = c_i
    Vector b;       ///< b_0 .. b_{d-1}
    Vector c_star;  ///< c*_1 .. c*_d
    Vector b_star;  ///< b*_0 .. b*_{d-1}
};

/// Throws ZeroDenominator or RelationViolation; neither happens for a valid array.
IntersectionNumbers intersection_numbers(const EigenvalueArray& arr);

struct TBSystem {
    EigenvalueArray array;
    IntersectionNumbers inters;
    Matrix A, A_star;
    std::vector<Matrix> E, E_star;
    Vector k;  ///< empty when some c_i vanishes
    Matrix K;  ///< 0 x 0 when k is empty
    Matrix S, S_star;

    std::size_t d() const { return array.d(); }
    const Field& field() const { return array.field(); }
    const Vector& theta() const { return array.theta(); }
    const Vector& theta_star() const { return array.theta_star(); }
};

/// Builds from the intersection numbers and checks the system invariants;
/// throws RelationViolation if one fails.
TBSystem build_system(const EigenvalueArray& arr);

/// The same assembly from arbitrary (possibly inconsistent) intersection
/// numbers without any checks, so broken inputs can still be verified.
TBSystem assemble_system(const EigenvalueArray& arr, const IntersectionNumbers& inters);

/// (R, L): the strictly lower and strictly upper parts of A.
std::pair<Matrix, Matrix> raising_lowering(const TBSystem& sys);

/// Checks (a) diagonalizable, (b) tridiagonal pattern of E*_i A E*_j and
/// E_i A* E_j, (c) irreducible, (d) algebra generation, (e) r-step pattern.
VerificationReport verify_axioms(const TBSystem& sys);

/// Askey-Wilson relations with the given sequence, plus the degenerate
/// identities for d = 1 and d = 2.
VerificationReport verify_aw_relations(const TBSystem& sys, const AskeyWilsonSeq& seq);

/// K^{-1} X^t K. Throws DimensionMismatch, or Singular when K is not invertible.
Matrix dagger(const TBSystem& sys, const Matrix& x);

/// dagger fixes A, A*, E_i, E*_i; is an involution and reverses products on
/// `pairs` random pairs drawn from a generator seeded with `seed`.
VerificationReport dagger_check(const TBSystem& sys, std::size_t pairs = 100, std::uint64_t seed = 1);

/// Identities of S and S*, and S-conjugation onto the down relative.
VerificationReport involutions_check(const TBSystem& sys);

/// Spectral data, A^t K = K A, standard eigenvectors, raising and lowering
/// maps, the boundary identity for E*_i A^r A* A^s E*_j and the basis of
/// M A* M.
VerificationReport structure_check(const TBSystem& sys);

/// The four sums of the self-dual isomorphism.
struct SdSums {
    Matrix sum[4];
};
/// Throws NotSelfDual.
SdSums sd_sums(const TBSystem& sys);

/// The common value of the four sums: Psi A = A* Psi and Psi A* = A Psi.
/// Throws NotSelfDual, or RelationViolation if the sums disagree.
Matrix sd_isomorphism(const TBSystem& sys);

/// Equality of the sums, nonzeroness, intertwining and Psi^2 scalar.
VerificationReport sd_isomorphism_check(const TBSystem& sys);

/// Eigenvalue arrays equal. Throws FieldMismatch.
bool isomorphic(const TBSystem& x, const TBSystem& y);

}  // namespace tbtd
