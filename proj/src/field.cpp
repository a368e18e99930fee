#include "bnloc/field.hpp"

#include "bnloc/errors.hpp"

#include <cctype>

namespace bnloc {

FieldSpec FieldSpec::finite_prime(std::int64_t p) {
  if (p < 3 || !is_prime(Integer(p)))
    fail(ErrorCode::InvalidArgument, "F_p needs an odd prime p, got " + std::to_string(p));
  return FieldSpec(Kind::FinitePrime, p);
}

FieldSpec FieldSpec::parse(const std::string& text) {
  if (text == "Q" || text == "QQ") return rationals();
  if (text == "R" || text == "RR") return reals();
  if (text == "C" || text == "CC" || text == "qc") return quadratically_closed();
  std::string digits;
  if (text.rfind("GF(", 0) == 0 && text.size() > 4 && text.back() == ')')
    digits = text.substr(3, text.size() - 4);
  else if (text.rfind("F_", 0) == 0)
    digits = text.substr(2);
  else if (text.rfind("F", 0) == 0)
    digits = text.substr(1);
  bool numeric = !digits.empty() && digits.size() <= 18;
  for (char c : digits) numeric = numeric && std::isdigit(static_cast<unsigned char>(c));
  if (!numeric) fail(ErrorCode::ParseError, "unknown field '" + text + "'");
  return finite_prime(std::stoll(digits));
}

std::string FieldSpec::name() const {
  switch (kind_) {
    case Kind::Rationals: return "Q";
    case Kind::Reals: return "R";
    case Kind::QuadraticallyClosed: return "C";
    case Kind::FinitePrime: return "F" + std::to_string(p_);
  }
  return "?";
}

Integer FieldSpec::residue(const Rational& value) const {
  Integer p(p_);
  Integer num = boost::multiprecision::numerator(value);
  Integer den = boost::multiprecision::denominator(value);
  if (den % p == 0) fail(ErrorCode::InvalidArgument, to_string(value) + " is not defined in " + name());
  Integer n = mod_floor(num, p);
  if (n == 0) fail(ErrorCode::ZeroElement, to_string(value) + " vanishes in " + name());
  Integer inv = boost::multiprecision::powm(mod_floor(den, p), Integer(p - 2), Integer(p));
  return mod_floor(n * inv, p);
}

void require_same_field(const FieldSpec& a, const FieldSpec& b) {
  if (!(a == b)) fail(ErrorCode::FieldMismatch, "field mismatch: " + a.name() + " vs " + b.name());
}

}  // namespace bnloc
