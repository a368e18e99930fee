#include "bnloc/errors.hpp"

namespace bnloc {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::TheoryMismatch: return "TheoryMismatch";
    case ErrorCode::TagMismatch: return "TagMismatch";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::WrongField: return "WrongField";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::UnreducedQ1Product: return "UnreducedQ1Product";
    case ErrorCode::EvenLevel: return "EvenLevel";
    case ErrorCode::NonUnitLeading: return "NonUnitLeading";
    case ErrorCode::ZeroClass: return "ZeroClass";
    case ErrorCode::MissingEntry: return "MissingEntry";
    case ErrorCode::PolePresent: return "PolePresent";
    case ErrorCode::TwistedInput: return "TwistedInput";
    case ErrorCode::MissingRestriction: return "MissingRestriction";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NonInvertibleDenominator: return "NonInvertibleDenominator";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::SchemaError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::FieldMismatch:
    case ErrorCode::TheoryMismatch:
    case ErrorCode::TagMismatch:
    case ErrorCode::ContextMismatch:
    case ErrorCode::WrongField:
      return 2;
    case ErrorCode::Internal:
      return 4;
    default:
      return 3;
  }
}

}  // namespace bnloc
