#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fenchel {

enum class ErrorCode {
    NotSymmetric,
    Singular,
    NotPSD,
    NotPositiveDefinite,
    NotInvolution,
    DimMismatch,
    BadDeterminant,
    AllInfinite,
    EmptyList,
    InvalidArgument,
    ParseError,
    UnknownDemo,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::BadDeterminant: return "BadDeterminant";
    case ErrorCode::AllInfinite: return "AllInfinite";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownDemo: return "UnknownDemo";
    }
    return "Unknown";
}

/// Every precondition failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace fenchel
