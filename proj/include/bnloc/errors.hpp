#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bnloc {

enum class ErrorCode {
  ParseError,
  SchemaError,
  InvalidArgument,
  FieldMismatch,
  TheoryMismatch,
  TagMismatch,
  ContextMismatch,
  WrongField,
  DegenerateForm,
  ZeroElement,
  UnreducedQ1Product,
  EvenLevel,
  NonUnitLeading,
  ZeroClass,
  MissingEntry,
  PolePresent,
  TwistedInput,
  MissingRestriction,
  PrecisionExhausted,
  NonInvertibleDenominator,
  Unsupported,
  Internal,
};

std::string_view error_name(ErrorCode code);

/// Process exit code for an error: 2 for malformed input, 3 for
/// mathematical domain failures, 4 for internal faults.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace bnloc
