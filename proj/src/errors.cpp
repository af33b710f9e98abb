#include "nevan/errors.hpp"

namespace nevan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::BoundaryPole: return "BoundaryPole";
    case ErrorCode::RootFindingFailure: return "RootFindingFailure";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::EmptyPolynomial: return "EmptyPolynomial";
    case ErrorCode::DegreeViolation: return "DegreeViolation";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::RadiusOrder: return "RadiusOrder";
    case ErrorCode::OrderError: return "OrderError";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::NormalizationError: return "NormalizationError";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::InvalidModel: return "InvalidModel";
  }
  return "Unknown";
}

}  // namespace nevan
