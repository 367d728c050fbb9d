#include "rankforge/errors.hpp"

namespace rankforge {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::LeadingZero: return "LeadingZero";
        case ErrorCode::InsufficientOrder: return "InsufficientOrder";
        case ErrorCode::NonIntegralExponent: return "NonIntegralExponent";
        case ErrorCode::NonIntegralPrefix: return "NonIntegralPrefix";
        case ErrorCode::PoleAtTerm: return "PoleAtTerm";
        case ErrorCode::ZeroTheta: return "ZeroTheta";
        case ErrorCode::UnknownTerm: return "UnknownTerm";
        case ErrorCode::UnknownIdentity: return "UnknownIdentity";
        case ErrorCode::Unsupported: return "Unsupported";
        case ErrorCode::InsufficientTable: return "InsufficientTable";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace rankforge
