#pragma once

#include <stdexcept>
#include <string>

namespace rankforge {

enum class ErrorCode {
    LeadingZero,
    InsufficientOrder,
    NonIntegralExponent,
    NonIntegralPrefix,
    PoleAtTerm,
    ZeroTheta,
    UnknownTerm,
    UnknownIdentity,
    Unsupported,
    InsufficientTable,
    OutOfRange,
    ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace rankforge
