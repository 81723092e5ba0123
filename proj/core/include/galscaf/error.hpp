#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace galscaf {

enum class ErrorCode {
    InvalidSpec,
    InvalidInput,
    InvalidArgument,
    NonzeroUndetectable,
    DivisionByZero,
    NoSolution,
    PrecisionLoss,
    LemmaViolation,
    AssumptionFailed,
    Mismatch,
    BoundViolated,
    NotOneUnit,
    IdentityFailed,
    ParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code and the
// module that raised it, so the CLI can emit an error record without parsing
// the message text.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string module, const std::string& detail)
        : std::runtime_error(detail), code_(code), module_(std::move(module)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorCode code_;
    std::string module_;
};

}  // namespace galscaf
