#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace morseprof {

enum class ErrorCode {
    MissingFace,
    DuplicateVertex,
    DimensionOutOfRange,
    InvalidId,
    NonMonotone,
    ParseError,
    EmptyCloud,
    NonSymmetricMatrix,
    InvalidArgument,
    UnknownName,
    InvalidPair,
    NotIncident,
    CapExceeded,
    MismatchedInputs,
    EmptyComplex,
};

inline std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MissingFace: return "MissingFace";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
    case ErrorCode::NonSymmetricMatrix: return "NonSymmetricMatrix";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::NotIncident: return "NotIncident";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::MismatchedInputs: return "MismatchedInputs";
    case ErrorCode::EmptyComplex: return "EmptyComplex";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace morseprof
