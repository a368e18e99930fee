#pragma once

#include "bnloc/witt.hpp"

#include <optional>
#include <string>

namespace bnloc {

/// Witt class with a positive integer denominator, independent of any
/// localization. Used for literals before the inverted integer is known.
struct WittFraction {
  WittClass numerator;
  Integer denominator = 1;

  static WittFraction of(const WittClass& w) { return {w, 1}; }
  static WittFraction rational(const FieldSpec& field, const Rational& r);

  bool is_zero() const { return numerator.is_zero(); }
  WittFraction operator+(const WittFraction& other) const;
  WittFraction operator-() const { return {-numerator, denominator}; }
  WittFraction operator*(const WittFraction& other) const;
  WittFraction divided_by(const Integer& n) const;
};

/// Element of W(k)[1/M].
///
/// Over an ordered field W(k) = Z + torsion, so an element is a rational with
/// M-smooth denominator plus a torsion class (killed when M is even, since
/// the torsion is 2-primary). Over F_p and quadratically closed fields every
/// class is torsion and the ring vanishes for even M.
class LocalCoeff {
 public:
  static LocalCoeff zero(const FieldSpec& field, const Integer& inverted);
  static LocalCoeff one(const FieldSpec& field, const Integer& inverted);
  static LocalCoeff of(const WittClass& w, const Integer& inverted);
  /// Throws NonInvertibleDenominator unless the denominator is M-smooth.
  static LocalCoeff of(const WittFraction& w, const Integer& inverted);
  static LocalCoeff rational(const FieldSpec& field, const Rational& r, const Integer& inverted);

  const FieldSpec& field() const { return torsion_.field(); }
  const Integer& inverted() const { return inverted_; }
  /// Coefficient of <1> over ordered fields; zero otherwise.
  const Rational& free_part() const { return free_; }
  const WittClass& torsion() const { return torsion_; }

  bool is_zero() const { return free_ == 0 && torsion_.is_zero(); }
  /// True when the element has no denominator, i.e. lies in the image of W(k).
  bool is_integral() const;
  /// The class in W(k) when is_integral().
  WittClass to_witt() const;

  LocalCoeff operator+(const LocalCoeff& other) const;
  LocalCoeff operator-() const;
  LocalCoeff operator-(const LocalCoeff& other) const { return *this + (-other); }
  LocalCoeff operator*(const LocalCoeff& other) const;
  /// Multiplicative inverse in W(k)[1/M], if it exists.
  std::optional<LocalCoeff> inverse() const;

  /// Same value viewed in W(k)[1/M'] for a multiple M' of M.
  LocalCoeff promoted(const Integer& inverted) const;

  /// "0", "a/b", "<...>" or "a/b+<...>".
  std::string to_string() const;

  friend bool operator==(const LocalCoeff& a, const LocalCoeff& b) {
    return a.inverted_ == b.inverted_ && a.free_ == b.free_ && a.torsion_ == b.torsion_;
  }

 private:
  LocalCoeff(Integer inverted, Rational free, WittClass torsion);

  Integer inverted_;
  Rational free_;
  WittClass torsion_;
};

}  // namespace bnloc
