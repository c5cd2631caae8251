#pragma once

#include <stdexcept>
#include <string>

namespace chsh {

enum class ErrorCode {
    NegativeWeight,
    NotNormalized,
    DuplicateAtom,
    MismatchedSpace,
    NullEvent,
    RangeViolation,
    InvalidTable,
    InvalidFamily,
    InvalidParams,
    InvalidConfig,
    TargetOutOfRange,
    EmptyCell,
    InconsistentMarginals,
    PreconditionViolated,
    ParseError,
    Internal,
};

const char* to_string(ErrorCode code);

/// Thrown by every operation whose contract names an error condition.
/// Everything except ErrorCode::Internal is an input/validation failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    bool is_validation() const noexcept { return code_ != ErrorCode::Internal; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::DuplicateAtom: return "DuplicateAtom";
        case ErrorCode::MismatchedSpace: return "MismatchedSpace";
        case ErrorCode::NullEvent: return "NullEvent";
        case ErrorCode::RangeViolation: return "RangeViolation";
        case ErrorCode::InvalidTable: return "InvalidTable";
        case ErrorCode::InvalidFamily: return "InvalidFamily";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
        case ErrorCode::EmptyCell: return "EmptyCell";
        case ErrorCode::InconsistentMarginals: return "InconsistentMarginals";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace chsh
