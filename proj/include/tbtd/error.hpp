#pragma once

#include <stdexcept>
#include <string>

namespace tbtd {

enum class ErrorCode {
    DivisionByZero,
    FieldMismatch,
    DimensionMismatch,
    Singular,
    NotAnnihilated,
    DuplicateEigenvalue,
    LengthMismatch,
    CharacteristicTwo,
    InvalidArray,
    NoBeta,
    BetaInvalid,
    CharacteristicViolation,
    QConditionViolation,
    BannaiItoOddDiameter,
    Unclassifiable,
    NotRecurrent,
    NoQInField,
    ZeroDenominator,
    NotSelfDual,
    NoSquareRootInField,
    RelationViolation,
    KappaMismatch,
    ParseError,
    InvalidArgument,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    ErrorCode code() const noexcept { return code_; }
    const char* name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace tbtd
