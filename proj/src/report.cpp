#include "tbtd/report.hpp"

#include <sstream>

namespace tbtd {

std::string first_nonzero(const Matrix& x) {
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (!x(i, j).is_zero())
                return "(" + std::to_string(i) + ", " + std::to_string(j) + ") = " + x(i, j).to_string();
    return "zero";
}

void CheckBuilder::fail(std::string witness, std::optional<Matrix> residual) {
    if (!check_.passed) return;
    check_.passed = false;
    check_.witness = std::move(witness);
    check_.residual = std::move(residual);
}

bool CheckBuilder::equal(const Matrix& lhs, const Matrix& rhs, const std::string& what) {
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
        fail(what + ": shapes differ");
        return false;
    }
    if (lhs == rhs) return true;
    Matrix r = lhs - rhs;
    fail(what + ": residual " + first_nonzero(r), r);
    return false;
}

bool CheckBuilder::zero(const Matrix& x, const std::string& what) {
    if (x.is_zero()) return true;
    fail(what + " is nonzero: " + first_nonzero(x), x);
    return false;
}

bool CheckBuilder::nonzero(const Matrix& x, const std::string& what) {
    if (!x.is_zero()) return true;
    fail(what + " is zero");
    return false;
}

bool CheckBuilder::require(bool condition, const std::string& what) {
    if (!condition) fail(what);
    return condition;
}

void VerificationReport::add(std::string name, bool passed, std::string witness) {
    checks_.push_back(Check{std::move(name), passed, passed ? std::string() : std::move(witness), std::nullopt});
}

void VerificationReport::append(const VerificationReport& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool VerificationReport::all_passed() const {
    for (const auto& c : checks_)
        if (!c.passed) return false;
    return true;
}

const Check* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks_)
        if (c.name == name) return &c;
    return nullptr;
}

std::string VerificationReport::to_table() const {
    std::ostringstream os;
    if (!title_.empty()) os << title_ << "\n";
    for (const auto& c : checks_) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.passed) os << ": " << c.witness;
        os << "\n";
    }
    return os.str();
}

}  // namespace tbtd
