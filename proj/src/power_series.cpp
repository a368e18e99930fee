#include "bnloc/power_series.hpp"

#include "bnloc/errors.hpp"

#include <algorithm>

namespace bnloc {

PowerSeries::PowerSeries(FieldSpec field, int truncation)
    : field_(field) {
  if (truncation < 1) fail(ErrorCode::InvalidArgument, "truncation must be at least 1");
  coeffs_.assign(static_cast<std::size_t>(truncation), WittClass::zero(field));
}

PowerSeries::PowerSeries(FieldSpec field, int truncation, std::vector<WittClass> coeffs)
    : PowerSeries(field, truncation) {
  for (std::size_t i = 0; i < coeffs.size() && i < coeffs_.size(); ++i) {
    require_same_field(field_, coeffs[i].field());
    coeffs_[i] = std::move(coeffs[i]);
  }
}

PowerSeries PowerSeries::constant(const WittClass& c, int truncation) {
  return monomial(c, 0, truncation);
}

PowerSeries PowerSeries::monomial(const WittClass& c, int exponent, int truncation) {
  if (exponent < 0) fail(ErrorCode::InvalidArgument, "negative exponent in a power series");
  PowerSeries out(c.field(), truncation);
  if (exponent < truncation) out.coeffs_[static_cast<std::size_t>(exponent)] = c;
  return out;
}

bool PowerSeries::is_zero() const { return valuation() < 0; }

int PowerSeries::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return static_cast<int>(i);
  return -1;
}

PowerSeries PowerSeries::operator+(const PowerSeries& other) const {
  require_same_field(field_, other.field_);
  int t = std::min(truncation(), other.truncation());
  PowerSeries out(field_, t);
  for (int i = 0; i < t; ++i) out.coeffs_[i] = coeffs_[i] + other.coeffs_[i];
  return out;
}

PowerSeries PowerSeries::operator-() const {
  PowerSeries out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

PowerSeries PowerSeries::operator*(const PowerSeries& other) const {
  require_same_field(field_, other.field_);
  int t = std::min(truncation(), other.truncation());
  PowerSeries out(field_, t);
  for (int i = 0; i < t; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (int j = 0; i + j < t; ++j) {
      if (other.coeffs_[j].is_zero()) continue;
      out.coeffs_[i + j] = out.coeffs_[i + j] + coeffs_[i] * other.coeffs_[j];
    }
  }
  return out;
}

PowerSeries PowerSeries::scaled(const WittClass& c) const {
  PowerSeries out = *this;
  for (auto& a : out.coeffs_) a = a * c;
  return out;
}

PowerSeries PowerSeries::with_truncation(int t) const {
  if (t > truncation())
    fail(ErrorCode::PrecisionExhausted, "cannot raise truncation of a truncated series");
  PowerSeries out(field_, t);
  for (int i = 0; i < t; ++i) out.coeffs_[i] = coeffs_[i];
  return out;
}

PowerSeries PowerSeries::without_constant() const {
  return with_coefficient(0, WittClass::zero(field_));
}

PowerSeries PowerSeries::with_coefficient(int i, const WittClass& c) const {
  PowerSeries out = *this;
  if (i < truncation()) out.coeffs_.at(static_cast<std::size_t>(i)) = c;
  return out;
}

std::string PowerSeries::to_string() const {
  std::string out;
  for (int i = 0; i < truncation(); ++i) {
    const auto& c = coeffs_[i];
    if (c.is_zero()) continue;
    std::string coef = c.to_string();
    if (coef.find('+') != std::string::npos) coef = "(" + coef + ")";
    std::string term;
    if (i == 0)
      term = coef;
    else {
      std::string mono = i == 1 ? "e" : "e^" + std::to_string(i);
      term = coef == "1" ? mono : coef == "-1" ? "-" + mono : coef + "*" + mono;
    }
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace bnloc
