#pragma once

#include "bnloc/engine.hpp"
#include "bnloc/euler.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace bnloc {

using Json = nlohmann::ordered_json;

/// Parses and validates a problem file (JSON, version 1). All schema problems
/// are collected and reported together as one SchemaError, each prefixed by
/// its JSON pointer; malformed JSON raises ParseError with line and column.
LocalizationProblem parse_problem(const std::string& text);

/// Canonical JSON text for a problem; parse_problem reads it back unchanged.
std::string serialize_problem(const LocalizationProblem& problem);
Json problem_to_json(const LocalizationProblem& problem);

/// Parses a custom Euler table file over the given field.
EulerTable parse_euler_table(const std::string& text, const FieldSpec& field, bool sign_flip);

/// Table named by the problem (loaded relative to `base_dir`) or the built-in
/// one for its theory. A custom theory in the problem is replaced by the one
/// declared in the table file.
EulerTable resolve_table(LocalizationProblem& problem, const std::filesystem::path& base_dir);

std::string read_text_file(const std::filesystem::path& path);

Json class_to_json(const LocalizedClass& x);
Json coeff_to_json(const LocalCoeff& c);

struct LocalizeOutcome {
  Json report;
  int exit_code;
};

/// Runs assembly and degree extraction and builds the deterministic report.
/// Math-domain failures are reported inside the document with a nonzero exit code.
LocalizeOutcome run_localize(const LocalizationProblem& problem, const EulerTable& table);

/// Deterministic text form of a report: two-space indentation, trailing newline.
std::string dump(const Json& j);

}  // namespace bnloc
