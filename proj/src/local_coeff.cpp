#include "bnloc/local_coeff.hpp"

#include "bnloc/errors.hpp"

namespace bnloc {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------- WittFraction

namespace {

/// Cancels common factors when the numerator is an integer multiple of <1>.
WittFraction reduced(WittFraction f) {
  if (f.numerator.is_zero()) return {f.numerator, 1};
  const FieldSpec& k = f.numerator.field();
  if (!k.ordered() || !f.numerator.torsion_part().is_zero()) return f;
  Integer g = mp::gcd(f.numerator.signature(), f.denominator);
  return {WittClass::integer(k, f.numerator.signature() / g), f.denominator / g};
}

}  // namespace

WittFraction WittFraction::rational(const FieldSpec& field, const Rational& r) {
  return reduced({WittClass::integer(field, mp::numerator(r)), mp::denominator(r)});
}

WittFraction WittFraction::operator+(const WittFraction& other) const {
  Integer l = mp::lcm(denominator, other.denominator);
  return reduced({numerator.times(l / denominator) + other.numerator.times(l / other.denominator), l});
}

WittFraction WittFraction::operator*(const WittFraction& other) const {
  return reduced({numerator * other.numerator, denominator * other.denominator});
}

WittFraction WittFraction::divided_by(const Integer& n) const {
  if (n == 0) fail(ErrorCode::ZeroElement, "division by zero");
  if (n < 0) return reduced({-numerator, denominator * -n});
  return reduced({numerator, denominator * n});
}

// ---------------------------------------------------------------- LocalCoeff

namespace {

/// r * t for a torsion class t and a rational r = a/b with b odd: the torsion
/// ideal has exponent dividing 4, so b^{-1} acts as b mod 4.
WittClass scale_torsion(const WittClass& t, const Rational& r) {
  if (t.is_zero() || r == 0) return WittClass::zero(t.field());
  Integer k = mod_floor(mp::numerator(r) * mp::denominator(r), 4);
  return t.times(k);
}

void require_smooth(const Integer& den, const Integer& inverted) {
  if (den != 1 && !is_smooth_over(den, inverted))
    fail(ErrorCode::NonInvertibleDenominator,
         "denominator " + to_string(den) + " is not invertible after inverting " + to_string(inverted));
}

}  // namespace

LocalCoeff::LocalCoeff(Integer inverted, Rational free, WittClass torsion)
    : inverted_(std::move(inverted)), free_(std::move(free)), torsion_(std::move(torsion)) {
  if (inverted_ < 1) fail(ErrorCode::InvalidArgument, "inverted integer must be positive");
  if (!torsion_.field().ordered()) free_ = 0;
  if (inverted_ % 2 == 0) torsion_ = WittClass::zero(torsion_.field());
}

LocalCoeff LocalCoeff::zero(const FieldSpec& field, const Integer& inverted) {
  return LocalCoeff(inverted, 0, WittClass::zero(field));
}

LocalCoeff LocalCoeff::one(const FieldSpec& field, const Integer& inverted) {
  return of(WittClass::one(field), inverted);
}

LocalCoeff LocalCoeff::of(const WittClass& w, const Integer& inverted) {
  if (w.field().ordered()) return LocalCoeff(inverted, Rational(w.signature()), w.torsion_part());
  return LocalCoeff(inverted, 0, w);
}

LocalCoeff LocalCoeff::of(const WittFraction& w, const Integer& inverted) {
  require_smooth(w.denominator, inverted);
  return of(w.numerator, inverted) * rational(w.numerator.field(), Rational(1, w.denominator), inverted);
}

LocalCoeff LocalCoeff::rational(const FieldSpec& field, const Rational& r, const Integer& inverted) {
  require_smooth(mp::denominator(r), inverted);
  if (field.ordered()) return LocalCoeff(inverted, r, WittClass::zero(field));
  return LocalCoeff(inverted, 0, scale_torsion(WittClass::one(field), r));
}

bool LocalCoeff::is_integral() const { return mp::denominator(free_) == 1; }

WittClass LocalCoeff::to_witt() const {
  if (!is_integral()) fail(ErrorCode::NonInvertibleDenominator, to_string() + " is not in the image of W(k)");
  return WittClass::integer(field(), mp::numerator(free_)) + torsion_;
}

LocalCoeff LocalCoeff::operator+(const LocalCoeff& other) const {
  if (inverted_ != other.inverted_)
    fail(ErrorCode::ContextMismatch, "coefficients with different inverted integers");
  return LocalCoeff(inverted_, free_ + other.free_, torsion_ + other.torsion_);
}

LocalCoeff LocalCoeff::operator-() const { return LocalCoeff(inverted_, -free_, -torsion_); }

LocalCoeff LocalCoeff::operator*(const LocalCoeff& other) const {
  if (inverted_ != other.inverted_)
    fail(ErrorCode::ContextMismatch, "coefficients with different inverted integers");
  WittClass t = scale_torsion(other.torsion_, free_) + scale_torsion(torsion_, other.free_) + torsion_ * other.torsion_;
  return LocalCoeff(inverted_, free_ * other.free_, t);
}

std::optional<LocalCoeff> LocalCoeff::inverse() const {
  if (is_zero()) return std::nullopt;
  const FieldSpec& k = field();
  if (k.ordered()) {
    // units: (smooth unit rational) * (1 + nilpotent torsion)
    if (free_ == 0 || !is_smooth_over(mp::numerator(free_), inverted_)) return std::nullopt;
    LocalCoeff finv(inverted_, 1 / free_, WittClass::zero(k));
    LocalCoeff n = (*this * finv) - one(k, inverted_);
    LocalCoeff sum = one(k, inverted_);
    LocalCoeff term = one(k, inverted_);
    for (int i = 0; i < 64; ++i) {
      term = -(term * n);
      if (term.is_zero()) return sum * finv;
      sum = sum + term;
    }
    fail(ErrorCode::Internal, "torsion part of " + to_string() + " is not nilpotent");
  }
  for (const auto& candidate : enumerate_classes(k)) {
    if (torsion_ * candidate == WittClass::one(k)) return LocalCoeff(inverted_, 0, candidate);
  }
  return std::nullopt;
}

LocalCoeff LocalCoeff::promoted(const Integer& inverted) const {
  if (inverted % inverted_ != 0)
    fail(ErrorCode::ContextMismatch, "cannot move from W[1/" + bnloc::to_string(inverted_) + "] to W[1/" + bnloc::to_string(inverted) + "]");
  return LocalCoeff(inverted, free_, torsion_);
}

std::string LocalCoeff::to_string() const {
  if (is_zero()) return "0";
  if (!field().ordered()) return torsion_.to_string();
  if (torsion_.is_zero()) return bnloc::to_string(free_);
  if (free_ == 0) return torsion_.to_string();
  return bnloc::to_string(free_) + "+" + torsion_.to_string();
}

}  // namespace bnloc
