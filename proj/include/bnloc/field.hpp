#pragma once

#include "bnloc/arith.hpp"

#include <cstdint>
#include <string>

namespace bnloc {

/// Base field of a computation. Reals are represented through the sign data of
/// rational entries; a quadratically closed field only remembers rank parity.
class FieldSpec {
 public:
  enum class Kind { Rationals, Reals, FinitePrime, QuadraticallyClosed };

  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
  static FieldSpec reals() { return FieldSpec(Kind::Reals, 0); }
  static FieldSpec quadratically_closed() { return FieldSpec(Kind::QuadraticallyClosed, 0); }
  /// Throws InvalidArgument unless p is an odd prime.
  static FieldSpec finite_prime(std::int64_t p);

  /// Accepts "Q", "R", "C", "F5" / "F_5" / "GF(5)".
  static FieldSpec parse(const std::string& text);

  Kind kind() const { return kind_; }
  std::int64_t prime() const { return p_; }
  std::int64_t characteristic() const { return kind_ == Kind::FinitePrime ? p_ : 0; }
  bool ordered() const { return kind_ == Kind::Rationals || kind_ == Kind::Reals; }
  /// Every element of W(k) is torsion (F_p and quadratically closed fields).
  bool torsion_only() const { return !ordered(); }

  std::string name() const;

  /// Reduces a rational to a nonzero residue in [1, p) for F_p fields.
  /// Throws ZeroElement when the value vanishes and InvalidArgument when the
  /// denominator is divisible by p.
  Integer residue(const Rational& value) const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  FieldSpec(Kind kind, std::int64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::int64_t p_;
};

void require_same_field(const FieldSpec& a, const FieldSpec& b);

}  // namespace bnloc
