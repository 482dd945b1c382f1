#include "tbtd/suites.hpp"

namespace tbtd {

VerificationReport validation_report(const ValidationResult& v) {
    VerificationReport r("array");
    for (const auto& x : v.violations) r.add(x.condition, false, x.detail);
    return r;
}

std::vector<VerificationReport> system_suites(const TBSystem& sys, std::size_t dagger_pairs) {
    std::vector<VerificationReport> out{verify_axioms(sys), verify_aw_relations(sys, aw_sequence_nonzero(sys.array)),
                                        dagger_check(sys, dagger_pairs), involutions_check(sys), structure_check(sys)};
    if (is_self_dual(sys.array)) out.push_back(sd_isomorphism_check(sys));
    return out;
}

std::vector<VerificationReport> triple_suites(const LeonardTriple& tri, const WData& w) {
    return {relations_check(tri),        w_check(tri, w),           braid_check(w),
            rho_check(tri, w),           antiautomorphism_check(tri, w), sigma_psl2z_check(tri, w)};
}

bool all_passed(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.all_passed()) return false;
    return true;
}

}  // namespace tbtd
