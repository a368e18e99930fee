#pragma once

#include "bnloc/witt.hpp"

#include <string>
#include <vector>

namespace bnloc {

/// Truncated power series sum_{i<T} a_i e^i with Witt-class coefficients.
/// Coefficients at i >= T are unknown; binary operations keep the smaller T.
class PowerSeries {
 public:
  static constexpr int kDefaultTruncation = 16;

  PowerSeries(FieldSpec field, int truncation);
  PowerSeries(FieldSpec field, int truncation, std::vector<WittClass> coeffs);

  static PowerSeries constant(const WittClass& c, int truncation);
  static PowerSeries monomial(const WittClass& c, int exponent, int truncation);

  const FieldSpec& field() const { return field_; }
  int truncation() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<WittClass>& coeffs() const { return coeffs_; }
  const WittClass& operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  const WittClass& constant_term() const { return coeffs_.front(); }

  bool is_zero() const;
  /// Lowest exponent with a nonzero coefficient, or -1 for zero.
  int valuation() const;

  PowerSeries operator+(const PowerSeries& other) const;
  PowerSeries operator-() const;
  PowerSeries operator-(const PowerSeries& other) const { return *this + (-other); }
  PowerSeries operator*(const PowerSeries& other) const;
  PowerSeries scaled(const WittClass& c) const;
  PowerSeries with_truncation(int truncation) const;
  /// Same series with the constant term removed.
  PowerSeries without_constant() const;
  PowerSeries with_coefficient(int i, const WittClass& c) const;

  /// Human-readable sum such as "3*e + <2,-1>*e^2"; "0" when zero.
  std::string to_string() const;

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  FieldSpec field_;
  std::vector<WittClass> coeffs_;
};

}  // namespace bnloc
