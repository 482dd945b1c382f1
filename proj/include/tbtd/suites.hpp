/**
 * @file suites.hpp
 * @brief The verification reports grouped the way the CLI runs them.
 */
#pragma once

#include "tbtd/triple.hpp"

namespace tbtd {

/// One failing check per violation of an invalid array; empty when valid.
VerificationReport validation_report(const ValidationResult& v);

/// Axioms, Askey-Wilson relations, dagger, involutions, structure, and the
/// self-dual isomorphism when the array is self-dual.
std::vector<VerificationReport> system_suites(const TBSystem& sys, std::size_t dagger_pairs = 100);

/// Relations, W, braid, rho, antiautomorphisms, sigma and PSL2(Z) words.
std::vector<VerificationReport> triple_suites(const LeonardTriple& tri, const WData& w);

bool all_passed(const std::vector<VerificationReport>& reports);

}  // namespace tbtd
