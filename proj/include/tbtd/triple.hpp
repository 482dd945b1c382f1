/**
 * @file triple.hpp
 * @brief Leonard triples from self-dual TB tridiagonal systems.
 *
 * With B = A* and z = z' = z'', the element C comes from
 *   beta = 2       AB - BA = z C
 *   beta = -2      AB + BA = z C
 *   beta != +-2    (q AB - q^{-1} BA) / (q^2 - q^{-2}) = z C
 * and W, W', W'' are spectral sums of A, B, C with common weights t_i.
 * P = W'W drives rho(X) = P^{-1} X P, which cycles A -> B -> C -> A.
 */
#pragma once

#include <optional>
#include <string>

#include "tbtd/system.hpp"

namespace tbtd {

enum class TripleCase { BetaTwo, BetaMinusTwo, Generic };

struct TripleScalars {
    FieldElement beta;
    FieldElement rho;  ///< equals rho*
    FieldElement h;
    FieldElement z;
    std::optional<FieldElement> q;  ///< present iff beta != +-2

    TripleCase which() const;
};

/// Scalars for a self-dual system. For d <= 2 beta is free: beta_hint, or 2
/// when absent (beta = -2 is rejected for d = 1). Throws NotSelfDual,
/// NoSquareRootInField (naming a field that would work), InvalidArgument.
TripleScalars triple_scalars(const TBSystem& sys, std::optional<FieldElement> beta_hint = std::nullopt);

struct LeonardTriple {
    TBSystem sys;
    TripleScalars scalars;
    Matrix A, B, C;
    std::vector<Matrix> E, E_prime, E_dprime;
};

/// Throws RelationViolation or NotAnnihilated; neither happens for valid scalars.
LeonardTriple build_C(const TBSystem& sys, const TripleScalars& sc);

/// triple_scalars followed by build_C.
LeonardTriple make_triple(const TBSystem& sys, std::optional<FieldElement> beta_hint = std::nullopt);

/// The three cyclic relations and the spectral data of C.
VerificationReport relations_check(const LeonardTriple& tri);

struct WData {
    Matrix W, W_prime, W_dprime, P;
    Matrix W_inv, W_prime_inv, P_inv;  ///< 0 x 0 when some t_i is zero
    Vector t;
    FieldElement kappa;  ///< the closed-form value, not read off P^3
};

/// The weights t_0 .. t_d of the case.
Vector t_values(const LeonardTriple& tri);
/// The closed-form kappa of the case.
FieldElement kappa_value(const LeonardTriple& tri);

/// W, W', W'', P from arbitrary weights; no checks.
WData assemble_W(const LeonardTriple& tri, const Vector& t);
/// assemble_W with t_values; throws KappaMismatch unless P^3 = kappa I.
WData build_W(const LeonardTriple& tri);

/// Commutation, intertwining, inverses, dagger-invariance, P^3.
VerificationReport w_check(const LeonardTriple& tri, const WData& w);
/// Pairwise braid relations and P = W'W = W''W' = WW''.
VerificationReport braid_check(const WData& w);

/// X -> P^{-1} X P
Matrix rho_automorphism(const WData& w, const Matrix& x);

/// A map X -> T^{-1} X T, or X -> T^{-1} X^dagger T when anti is set, where
/// dagger is the system's K-transpose.
class MatrixMap {
public:
    MatrixMap(const TBSystem& sys, bool anti, Matrix t, Matrix t_inv);
    static MatrixMap identity(const TBSystem& sys);

    bool anti() const { return anti_; }
    Matrix apply(const Matrix& x) const;
    /// apply(e_ij) in O(n^2).
    Matrix apply_unit(std::size_t i, std::size_t j) const;
    /// The map X -> next(this(X)).
    MatrixMap then(const MatrixMap& next) const;

private:
    Vector k_;
    bool anti_;
    Matrix t_, t_inv_;
};

/// First (i, j) where f(e_ij) != g(e_ij), or nullopt.
std::optional<std::pair<std::size_t, std::size_t>> first_unit_difference(const MatrixMap& f, const MatrixMap& g, std::size_t n);

struct Antiautomorphisms {
    MatrixMap dagger, dagger_p, dagger_pp;
    MatrixMap ddagger, ddagger_p, ddagger_pp;
};

Antiautomorphisms antiautomorphisms(const LeonardTriple& tri, const WData& w);
MatrixMap rho_map(const LeonardTriple& tri, const WData& w);
/// X -> T X T^{-1} with T = W W' W.
MatrixMap sigma_map(const LeonardTriple& tri, const WData& w);

/// rho on A, B, C, the idempotents and the W's; rho^3 = 1 on matrix units.
VerificationReport rho_check(const LeonardTriple& tri, const WData& w);
/// Action tables of the dagger and ddagger families, squares, and the
/// composition identities with rho.
VerificationReport antiautomorphism_check(const LeonardTriple& tri, const WData& w);
/// sigma on A, B, C, sigma^2 = 1, and PSL2(Z) words against their reduced forms.
VerificationReport sigma_psl2z_check(const LeonardTriple& tri, const WData& w);

/// Free reduction by r^3 = s^2 = 1.
std::string reduce_psl2z_word(const std::string& word);
/// The map of a word over {r, s}; the rightmost letter acts first.
MatrixMap word_map(const std::string& word, const MatrixMap& r, const MatrixMap& s, const TBSystem& sys);

}  // namespace tbtd
