#include "galscaf/error.hpp"

namespace galscaf {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonzeroUndetectable: return "NonzeroUndetectable";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::NoSolution: return "NoSolution";
        case ErrorCode::PrecisionLoss: return "PrecisionLoss";
        case ErrorCode::LemmaViolation: return "LemmaViolation";
        case ErrorCode::AssumptionFailed: return "AssumptionFailed";
        case ErrorCode::Mismatch: return "Mismatch";
        case ErrorCode::BoundViolated: return "BoundViolated";
        case ErrorCode::NotOneUnit: return "NotOneUnit";
        case ErrorCode::IdentityFailed: return "IdentityFailed";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace galscaf
