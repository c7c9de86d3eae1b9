#pragma once

#include <stdexcept>
#include <string>

namespace bosonext {

enum class ErrorCode {
    DivisionByZero,
    NotRegularAtZero,
    NegativeCoordinate,
    InvalidCartan,
    InvalidArgument,
    HeightBoundExceeded,
    EqualIndices,
    VerificationFailed,
    NormalizationFailed,
    NonIntegralTransition,
    NonAntisymmetric,
    UnsupportedType,
    InhomogeneousInput,
    NotStronglyHomogeneous,
    NotInSpan,
    SetMismatch,
    SyntaxError,
    EvalError,
    CacheError,
};

const char* error_code_name(ErrorCode code);

/** @brief Single exception type of the library; the code identifies the failure class. */
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotRegularAtZero: return "NotRegularAtZero";
    case ErrorCode::NegativeCoordinate: return "NegativeCoordinate";
    case ErrorCode::InvalidCartan: return "InvalidCartan";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::HeightBoundExceeded: return "HeightBoundExceeded";
    case ErrorCode::EqualIndices: return "EqualIndices";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::NormalizationFailed: return "NormalizationFailed";
    case ErrorCode::NonIntegralTransition: return "NonIntegralTransition";
    case ErrorCode::NonAntisymmetric: return "NonAntisymmetric";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::InhomogeneousInput: return "InhomogeneousInput";
    case ErrorCode::NotStronglyHomogeneous: return "NotStronglyHomogeneous";
    case ErrorCode::NotInSpan: return "NotInSpan";
    case ErrorCode::SetMismatch: return "SetMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::EvalError: return "EvalError";
    case ErrorCode::CacheError: return "CacheError";
    }
    return "Unknown";
}

}  // namespace bosonext
