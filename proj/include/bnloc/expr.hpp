#pragma once

#include "bnloc/bn_ring.hpp"
#include "bnloc/engine.hpp"
#include "bnloc/euler.hpp"

#include <map>
#include <string>
#include <variant>

namespace bnloc {

/// Expression syntax shared by every textual input: integers, identifiers,
/// Witt literals "<a,b,...>", + - * / ^, parentheses and juxtaposition as
/// multiplication. The characters ⟨ ⟩ − ẽ are accepted for < > - et.
struct ExprNode {
  enum class Kind { Number, Symbol, Witt, Add, Sub, Neg, Mul, Div, Pow };
  Kind kind;
  Integer number;
  std::string symbol;
  int exponent = 0;
  std::vector<ExprNode> children;
};

ExprNode parse_expression(const std::string& text);

using Bindings = std::map<std::string, Rational>;

Rational eval_scalar(const ExprNode& node, const Bindings& vars = {});

/// Witt-ring expression; entries of literals may use bound variables.
WittClass eval_witt(const ExprNode& node, const FieldSpec& field, const Bindings& vars = {});

/// "EXPR; d=-1, u=3": evaluates EXPR with the given scalar bindings.
WittClass eval_witt_command(const std::string& text, const FieldSpec& field);

using RingValue = std::variant<BNElem, TwistedElem>;

/// Expression in q0, e, et, q1 and Witt constants. et*et uses the table's et^2.
RingValue eval_ring(const ExprNode& node, const EulerTable& table, int truncation);

std::string to_string(const RingValue& v);

/// Laurent polynomial literal in e (negative powers allowed) and at most one
/// factor et, with rational and Witt coefficients.
LaurentLiteral parse_laurent_literal(const std::string& text, const FieldSpec& field);

/// Canonical text that parse_laurent_literal reads back to the same value.
std::string to_string(const LaurentLiteral& lit);
std::string to_string(const WittFraction& f);

}  // namespace bnloc
