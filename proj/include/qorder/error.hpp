#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qorder {

enum class ErrorCode {
    NotHermitian,
    NoConvergence,
    BadExponent,
    SingularMap,
    ShapeMismatch,
    NonFinite,
    InvalidState,
    ZeroTrace,
    NotNormalized,
    EmptySet,
    TruncationTooSmall,
    DependentGenerators,
    IndexOutOfRange,
    BadWeight,
    InvalidArgument,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace qorder
