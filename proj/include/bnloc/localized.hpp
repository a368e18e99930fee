#pragma once

#include "bnloc/bn_ring.hpp"
#include "bnloc/local_coeff.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>

namespace bnloc {

enum class TwistParity { Untwisted, Twisted };

inline TwistParity operator^(TwistParity a, TwistParity b) {
  return a == b ? TwistParity::Untwisted : TwistParity::Twisted;
}

std::string to_string(TwistParity tag);

/// Laurent series in e over W(k)[1/M] with an absolute precision: the
/// coefficients at exponents >= precision are unknown. No precision means the
/// series is an exact Laurent polynomial.
class LaurentSeries {
 public:
  LaurentSeries(FieldSpec field, Integer inverted, std::optional<int> precision = std::nullopt);

  static LaurentSeries monomial(const LocalCoeff& c, int exponent, std::optional<int> precision = std::nullopt);

  const FieldSpec& field() const { return field_; }
  const Integer& inverted() const { return inverted_; }
  const std::optional<int>& precision() const { return precision_; }
  bool exact() const { return !precision_.has_value(); }
  /// Known nonzero coefficients by exponent.
  const std::map<int, LocalCoeff>& terms() const { return terms_; }

  LocalCoeff coefficient(int exponent) const;
  /// Lowest exponent with a nonzero coefficient, if any is known.
  std::optional<int> valuation() const;
  bool is_zero() const { return terms_.empty(); }

  /// Returns a copy with coefficient `c` at `exponent` (must be below precision).
  LaurentSeries with_term(int exponent, const LocalCoeff& c) const;
  LaurentSeries truncated(int precision) const;

  LaurentSeries operator+(const LaurentSeries& other) const;
  LaurentSeries operator-() const;
  LaurentSeries operator-(const LaurentSeries& other) const { return *this + (-other); }
  LaurentSeries operator*(const LaurentSeries& other) const;
  LaurentSeries scaled(const LocalCoeff& c) const;

  /// Inverse with `relative_precision` known terms after the leading one.
  /// Throws ZeroClass, NonUnitLeading or PrecisionExhausted.
  LaurentSeries inverse(int relative_precision) const;

  /// Coefficientwise equality below the smaller of the two precisions.
  bool equals_up_to_precision(const LaurentSeries& other) const;

  /// Structural equality including precision.
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.field_ == b.field_ && a.inverted_ == b.inverted_ && a.precision_ == b.precision_ && a.terms_ == b.terms_;
  }

 private:
  void require_compatible(const LaurentSeries& other) const;
  /// Lower bound for the true valuation, or nullopt for an exact zero.
  std::optional<int> valuation_bound() const;

  FieldSpec field_;
  Integer inverted_;
  std::optional<int> precision_;
  std::map<int, LocalCoeff> terms_;
};

/// Shared data of one localized computation: the field, the inverted integer
/// M, the expansion length for inverses and the square of the twisted class.
struct LocalContext {
  FieldSpec field;
  Integer inverted;
  int truncation;
  LaurentSeries etilde_square;

  bool compatible_with(const LocalContext& other) const {
    return field == other.field && inverted == other.inverted && etilde_square == other.etilde_square;
  }
};

using ContextPtr = std::shared_ptr<const LocalContext>;

/// Context with the given data; `etilde_square` defaults to -4e.
ContextPtr make_context(const FieldSpec& field, const Integer& inverted, int truncation,
                        std::optional<LaurentSeries> etilde_square = std::nullopt);

/// Element of the localized ring (untwisted) or of the localized twisted
/// module, where a twisted value L means L * et.
class LocalizedClass {
 public:
  LocalizedClass(ContextPtr ctx, TwistParity tag, LaurentSeries series);

  static LocalizedClass zero(const ContextPtr& ctx, TwistParity tag = TwistParity::Untwisted);
  static LocalizedClass one(const ContextPtr& ctx);
  static LocalizedClass monomial(const ContextPtr& ctx, const LocalCoeff& c, int exponent,
                                 TwistParity tag = TwistParity::Untwisted);

  const ContextPtr& context() const { return ctx_; }
  TwistParity tag() const { return tag_; }
  const LaurentSeries& series() const { return series_; }
  const Integer& inverted() const { return series_.inverted(); }
  const std::optional<int>& precision() const { return series_.precision(); }
  bool is_zero() const { return series_.is_zero(); }

  /// Throws TagMismatch when adding nonzero values of different twist.
  LocalizedClass operator+(const LocalizedClass& other) const;
  LocalizedClass operator-() const;
  LocalizedClass operator-(const LocalizedClass& other) const { return *this + (-other); }
  /// Tags add; a product of two twisted values picks up et^2.
  LocalizedClass operator*(const LocalizedClass& other) const;
  LocalizedClass inverse() const;

  /// Equal tags (or both zero) and equal series up to precision.
  bool equals(const LocalizedClass& other) const;

 private:
  ContextPtr ctx_;
  TwistParity tag_;
  LaurentSeries series_;
};

/// Image of a BN element after inverting M*e; q0 maps to -1.
LocalizedClass localize(const BNElem& a, const ContextPtr& ctx);
LocalizedClass localize(const BNElem& a, const Integer& inverted);
/// Image of a twisted element; throws UnreducedQ1Product if q1 appears.
LocalizedClass localize(const TwistedElem& t, const ContextPtr& ctx);

LocalizedClass loc_invert(const LocalizedClass& x);

/// Coefficient of e^0 of a pole-free untwisted class.
/// Throws TwistedInput, PolePresent or PrecisionExhausted.
LocalCoeff degree(const LocalizedClass& x);

}  // namespace bnloc
