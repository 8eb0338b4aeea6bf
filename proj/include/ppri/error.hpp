#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppri {

// Every failure the library can report. Each kind has a distinct name which
// the CLI prints verbatim on the diagnostic stream.
enum class ErrorKind {
    NonPrimeModulus,
    PrimeMismatch,
    DivisionByZero,
    PrecisionExhausted,
    BudgetExceeded,
    NonFiniteInput,
    LengthMismatch,
    NonDecreasingRho,
    KindMismatch,
    NonConvergenceSuspected,
    MonotonicityViolation,
    DomainError,
    NoValuationCertificate,
    UnboundedCoefficients,
    OverflowRisk,
    ZeroArgument,
    OffCircleWithInfiniteSupport,
    NonSquareMatrix,
    OrderViolation,
    DimensionMismatch,
    NotSelfAdjoint,
    NotOrthonormal,
    Singular,
    NotInZE,
    SearchExhausted,
    AsymmetricRegion,
    NonConvexRegion,
    PreconditionViolation,
    ParseError,
    UnknownSuite,
    InternalError,
};

inline constexpr int kErrorKindCount = static_cast<int>(ErrorKind::InternalError) + 1;

constexpr std::string_view error_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::PrimeMismatch: return "PrimeMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NonDecreasingRho: return "NonDecreasingRho";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::NonConvergenceSuspected: return "NonConvergenceSuspected";
    case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NoValuationCertificate: return "NoValuationCertificate";
    case ErrorKind::UnboundedCoefficients: return "UnboundedCoefficients";
    case ErrorKind::OverflowRisk: return "OverflowRisk";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::OffCircleWithInfiniteSupport: return "OffCircleWithInfiniteSupport";
    case ErrorKind::NonSquareMatrix: return "NonSquareMatrix";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotInZE: return "NotInZE";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::AsymmetricRegion: return "AsymmetricRegion";
    case ErrorKind::NonConvexRegion: return "NonConvexRegion";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::InternalError: return "InternalError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return error_name(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace ppri
