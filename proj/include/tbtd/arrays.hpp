/**
 * @file arrays.hpp
 * @brief Eigenvalue arrays, beta-recurrent sequences, the four closed-form
 *        families and Askey-Wilson sequences.
 *
 * An EigenvalueArray ({th_i}; {th*_i}) of diameter d >= 1 is valid when
 *   (i)   each sequence is mutually distinct,
 *   (ii)  some beta satisfies th_{i-1} - beta th_i + th_{i+1} = 0 for both
 *         sequences (no constraint for d <= 2),
 *   (iii) th_i + th_{d-i} = 0 and th*_i + th*_{d-i} = 0.
 * Only validate_array and the functions built on it produce arrays, so an
 * EigenvalueArray in hand is always valid.
 */
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tbtd/matrix.hpp"

namespace tbtd {

struct ValidationResult;

class EigenvalueArray {
public:
    const Field& field() const { return field_; }
    std::size_t d() const { return theta_.size() - 1; }
    const Vector& theta() const { return theta_; }
    const Vector& theta_star() const { return theta_star_; }

    bool operator==(const EigenvalueArray& o) const {
        return field_ == o.field_ && theta_ == o.theta_ && theta_star_ == o.theta_star_;
    }
    bool operator!=(const EigenvalueArray& o) const { return !(*this == o); }

private:
    EigenvalueArray(Field f, Vector th, Vector ths) : field_(f), theta_(std::move(th)), theta_star_(std::move(ths)) {}
    Field field_;
    Vector theta_;
    Vector theta_star_;
    friend ValidationResult validate_array(const Field&, const Vector&, const Vector&);
};

struct Violation {
    std::string condition;  ///< "distinct", "recurrence" or "antisymmetry"
    std::string detail;
};

struct ValidationResult {
    std::optional<EigenvalueArray> array;
    std::vector<Violation> violations;
    bool ok() const { return array.has_value(); }
};

/// Checks conditions (i)-(iii). Throws LengthMismatch when the lists differ
/// in length or have fewer than two entries, and CharacteristicTwo in
/// characteristic 2.
ValidationResult validate_array(const Field& field, const Vector& theta, const Vector& theta_star);

/// validate_array, throwing InvalidArray with the violations on failure.
EigenvalueArray make_array(const Field& field, const Vector& theta, const Vector& theta_star);

// ------------------------------------------------------------ beta

/// Marker: every beta is a fundamental parameter (d <= 2).
struct AnyBeta {
    bool operator==(const AnyBeta&) const = default;
};
using FundamentalParameter = std::variant<AnyBeta, FieldElement>;

/// The unique beta for d >= 3 or AnyBeta for d <= 2. Throws NoBeta.
FundamentalParameter fundamental_parameter(const EigenvalueArray& arr);

/// beta read off th (first nonzero divisor among th_1, th_2) and checked
/// against the recurrence of both sequences; nullopt if none fits.
std::optional<FieldElement> find_beta(const Vector& theta, const Vector& theta_star);

/// A concrete beta for downstream use: the fundamental parameter for d >= 3,
/// beta = 2 for d <= 2.
FieldElement default_beta(const EigenvalueArray& arr);

// ------------------------------------------------------------ Askey-Wilson

struct AskeyWilsonSeq {
    FieldElement beta;
    FieldElement rho;
    FieldElement rho_star;
};

/// s_{i-1}^2 - beta s_{i-1} s_i + s_i^2
FieldElement aw_expression(const Vector& s, const FieldElement& beta, std::size_t i);

/// rho from the closed form: th_r^2 with r = d/2 - 1 (d even), or
/// (beta + 2) th_r^2 with r = (d - 1)/2 (d odd).
FieldElement aw_rho_closed_form(const Vector& s, const FieldElement& beta);

/// Throws BetaInvalid unless beta is a fundamental parameter for arr.
AskeyWilsonSeq aw_sequence(const EigenvalueArray& arr, const FieldElement& beta);

/// An Askey-Wilson sequence with rho, rho* nonzero (beta = 2 for d <= 2).
AskeyWilsonSeq aw_sequence_nonzero(const EigenvalueArray& arr);

// ------------------------------------------------------------ recurrent sequences

struct RecurrentSeq {
    FieldElement beta;
    Vector values;
    bool symmetric = false;
    bool antisymmetric = false;
    bool mutdist = false;
};

bool is_recurrent(const Vector& s, const FieldElement& beta);
bool is_mutdist(const Vector& s);

/// Throws NotRecurrent if the recurrence fails.
RecurrentSeq recurrent_seq(const Vector& values, const FieldElement& beta);

/// (sym, asym) with sym_i = (s_i + s_{d-i})/2 and asym_i = (s_i - s_{d-i})/2.
std::pair<Vector, Vector> sym_asym_split(const Vector& values, const FieldElement& beta);

/// Symmetric basis sequence of the beta-recurrent sequences of diameter d.
Vector basis_sym(const FieldElement& beta, std::size_t d);
/// Antisymmetric basis sequence.
Vector basis_asym(const FieldElement& beta, std::size_t d);

/// A root q of y^2 + y^{-2} = beta in beta's field, encoding-minimal among
/// q, -q, 1/q, -1/q; nullopt when none exists.
std::optional<FieldElement> q_from_beta(const FieldElement& beta);

// ------------------------------------------------------------ families

enum class FamilyKind { Krawtchouk, BannaiIto, QRacahEven, QRacahOdd, SmallD1, SmallD2 };

const char* family_name(FamilyKind kind);
/// Accepts the family_name spellings; throws ParseError.
FamilyKind parse_family(const std::string& name);

struct FamilyTag {
    FamilyKind kind = FamilyKind::Krawtchouk;
    FieldElement h;
    FieldElement h_star;
    std::optional<FieldElement> q;     ///< q-Racah only
    std::optional<FieldElement> beta;  ///< q-Racah only; recorded by classify
};

/// Same kind and h, h*; q equal up to q -> -q, 1/q; beta equal when both set.
bool tags_equivalent(const FamilyTag& x, const FamilyTag& y);

/// beta of the family: 2, -2, q^2 + q^{-2} or the recorded beta.
FieldElement family_beta(const FamilyTag& tag, const Field& field);

/// Closed-form array of the family. Errors: CharacteristicViolation,
/// QConditionViolation, BannaiItoOddDiameter, InvalidArgument.
EigenvalueArray generate_family(const FamilyTag& tag, std::size_t d, const Field& field);

/// The family tag of a valid array; SmallD tags for d <= 2.
FamilyTag classify(const EigenvalueArray& arr);

// ------------------------------------------------------------ relatives

struct Relatives {
    EigenvalueArray star;  ///< (th*; th)
    EigenvalueArray down;  ///< th* reversed
    EigenvalueArray Down;  ///< th reversed
};

Relatives relatives(const EigenvalueArray& arr);

bool is_self_dual(const EigenvalueArray& arr);
/// zeta = th*_0 / th_0
FieldElement self_dual_scaling(const EigenvalueArray& arr);
/// (zeta th; th*), which is self-dual.
EigenvalueArray scaled_self_dual(const EigenvalueArray& arr);

}  // namespace tbtd
