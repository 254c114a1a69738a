#include "qorder/error.hpp"

namespace qorder {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::ZeroTrace: return "ZeroTrace";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::DependentGenerators: return "DependentGenerators";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BadWeight: return "BadWeight";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

} // namespace qorder
