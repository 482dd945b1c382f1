#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tbtd/matrix.hpp"

namespace tbtd {

struct Check {
    std::string name;
    bool passed = true;
    std::string witness;             ///< first failure, empty on success
    std::optional<Matrix> residual;  ///< lhs - rhs of the first failed identity
};

/// Collects the outcome of many comparisons into one Check; keeps the first
/// failure only.
class CheckBuilder {
public:
    explicit CheckBuilder(std::string name) { check_.name = std::move(name); }

    /// Records lhs == rhs; on failure stores the residual and the first
    /// differing entry.
    bool equal(const Matrix& lhs, const Matrix& rhs, const std::string& what);
    bool zero(const Matrix& x, const std::string& what);
    bool nonzero(const Matrix& x, const std::string& what);
    bool require(bool condition, const std::string& what);

    bool ok() const { return check_.passed; }
    Check done() && { return std::move(check_); }

private:
    void fail(std::string witness, std::optional<Matrix> residual = std::nullopt);
    Check check_;
};

class VerificationReport {
public:
    explicit VerificationReport(std::string title = {}) : title_(std::move(title)) {}

    const std::string& title() const { return title_; }
    const std::vector<Check>& checks() const { return checks_; }

    void add(Check c) { checks_.push_back(std::move(c)); }
    void add(std::string name, bool passed, std::string witness = {});
    void append(const VerificationReport& other);

    bool all_passed() const;
    /// nullptr when absent
    const Check* find(const std::string& name) const;

    /// One "PASS name" / "FAIL name: witness" line per check.
    std::string to_table() const;

private:
    std::string title_;
    std::vector<Check> checks_;
};

/// "(r, c) = value" for the first nonzero entry, or "zero".
std::string first_nonzero(const Matrix& x);

}  // namespace tbtd
