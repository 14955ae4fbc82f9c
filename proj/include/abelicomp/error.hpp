#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abelicomp {

enum class ErrorCode {
    InvalidModulus,
    ShapeError,
    RangeError,
    NotPrime,
    NotIrreducible,
    DivisionByZero,
    DegenerateClass,
    ParseError,
    InvalidDigraph,
    Unsupported,
    NoTerminal,
    PrecisionRefused,
    NotGrowing,
    HypothesisViolated,
    NoConvergence,
    BudgetExceeded,
    EmptySubset,
    InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DegenerateClass: return "DegenerateClass";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidDigraph: return "InvalidDigraph";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NoTerminal: return "NoTerminal";
    case ErrorCode::PrecisionRefused: return "PrecisionRefused";
    case ErrorCode::NotGrowing: return "NotGrowing";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can report it in machine-readable form.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace abelicomp
