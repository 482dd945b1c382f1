/**
 * @file json_io.hpp
 * @brief JSON documents for arrays, systems and triples.
 *
 * Every number is a field-element string. Each schema extends the previous
 * one, so a triple document is also a valid system and array document:
 *   array   {field, d, theta, theta_star, family?}
 *   system  + {c, b, c_star, b_star, A, A_star, K}
 *   triple  + {beta, z, kappa, t, C, W, W_prime, W_dprime, P}
 * Matrices are lists of rows. Keys are emitted in this fixed order.
 */
#pragma once

#include <nlohmann/json.hpp>

#include "tbtd/triple.hpp"

namespace tbtd {

using Json = nlohmann::ordered_json;

Json to_json(const Matrix& m);
Json to_json(const Vector& v);
Json to_json(const FamilyTag& tag);
Json to_json(const VerificationReport& r);

Json array_json(const EigenvalueArray& arr, const std::optional<FamilyTag>& tag = std::nullopt);
Json system_json(const TBSystem& sys, const std::optional<FamilyTag>& tag = std::nullopt);
Json triple_json(const LeonardTriple& tri, const WData& w, const std::optional<FamilyTag>& tag = std::nullopt);

/// An array document before validation, so that invalid inputs can still be
/// reported on.
struct ArrayRecord {
    Field field = Field::rationals();
    Vector theta, theta_star;
    std::optional<FamilyTag> family;
};

/// A system document; inters is present when c and b are.
struct SystemRecord {
    ArrayRecord array;
    std::optional<IntersectionNumbers> inters;
};

/// Throws ParseError on a malformed document or element string.
ArrayRecord parse_array_record(const Json& j);
SystemRecord parse_system_record(const Json& j);

/// validate_array on the record; throws InvalidArray.
EigenvalueArray array_from_json(const Json& j);
/// The array plus its stored intersection numbers, assembled without checks;
/// A, A* and K are rebuilt from them. Without c and b the numbers are computed.
TBSystem system_from_json(const Json& j);

/// Rebuilds the triple from the embedded system and beta and requires the
/// stored z, t, kappa, C, W, W', W'', P to match; throws ParseError otherwise.
std::pair<LeonardTriple, WData> triple_from_json(const Json& j);

}  // namespace tbtd
