#include "bnloc/localized.hpp"

#include "bnloc/errors.hpp"

#include <algorithm>
#include <vector>

namespace bnloc {

std::string to_string(TwistParity tag) { return tag == TwistParity::Twisted ? "twisted" : "untwisted"; }

// ---------------------------------------------------------------- LaurentSeries

LaurentSeries::LaurentSeries(FieldSpec field, Integer inverted, std::optional<int> precision)
    : field_(field), inverted_(std::move(inverted)), precision_(precision) {
  if (inverted_ < 1) fail(ErrorCode::InvalidArgument, "inverted integer must be positive");
}

LaurentSeries LaurentSeries::monomial(const LocalCoeff& c, int exponent, std::optional<int> precision) {
  return LaurentSeries(c.field(), c.inverted(), precision).with_term(exponent, c);
}

LocalCoeff LaurentSeries::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? LocalCoeff::zero(field_, inverted_) : it->second;
}

std::optional<int> LaurentSeries::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

std::optional<int> LaurentSeries::valuation_bound() const {
  if (!terms_.empty()) return terms_.begin()->first;
  return precision_;
}

LaurentSeries LaurentSeries::with_term(int exponent, const LocalCoeff& c) const {
  if (!(c.field() == field_) || c.inverted() != inverted_)
    fail(ErrorCode::ContextMismatch, "coefficient from a different localization");
  LaurentSeries out = *this;
  if (precision_ && exponent >= *precision_) return out;
  if (c.is_zero())
    out.terms_.erase(exponent);
  else
    out.terms_.insert_or_assign(exponent, c);
  return out;
}

LaurentSeries LaurentSeries::truncated(int precision) const {
  LaurentSeries out(field_, inverted_, precision_ ? std::min(*precision_, precision) : precision);
  for (const auto& [k, c] : terms_)
    if (k < *out.precision_) out.terms_.emplace(k, c);
  return out;
}

void LaurentSeries::require_compatible(const LaurentSeries& other) const {
  require_same_field(field_, other.field_);
  if (inverted_ != other.inverted_)
    fail(ErrorCode::ContextMismatch, "series localized at different integers " + to_string(inverted_) + " and " +
                                         to_string(other.inverted_));
}

namespace {

std::optional<int> min_precision(const std::optional<int>& a, const std::optional<int>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

LaurentSeries LaurentSeries::operator+(const LaurentSeries& other) const {
  require_compatible(other);
  LaurentSeries out(field_, inverted_, min_precision(precision_, other.precision_));
  for (const auto* s : {this, &other})
    for (const auto& [k, c] : s->terms_) {
      if (out.precision_ && k >= *out.precision_) continue;
      out = out.with_term(k, out.coefficient(k) + c);
    }
  return out;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& other) const {
  require_compatible(other);
  std::optional<int> prec;
  auto v1 = valuation_bound(), v2 = other.valuation_bound();
  if (!v1 || !v2) {
    prec = std::nullopt;  // an exact zero factor
  } else {
    if (precision_) prec = *precision_ + *v2;
    if (other.precision_) prec = min_precision(prec, *other.precision_ + *v1);
  }
  LaurentSeries out(field_, inverted_, prec);
  if (!v1 || !v2) return out;
  for (const auto& [i, a] : terms_)
    for (const auto& [j, b] : other.terms_) {
      if (prec && i + j >= *prec) continue;
      out = out.with_term(i + j, out.coefficient(i + j) + a * b);
    }
  return out;
}

LaurentSeries LaurentSeries::scaled(const LocalCoeff& c) const {
  return *this * monomial(c, 0);
}

LaurentSeries LaurentSeries::inverse(int relative_precision) const {
  auto v = valuation();
  if (!v) fail(ErrorCode::ZeroClass, "cannot invert a class with no known nonzero coefficient");
  LocalCoeff lead = coefficient(*v);
  auto lead_inv = lead.inverse();
  if (!lead_inv)
    fail(ErrorCode::NonUnitLeading, "leading coefficient " + lead.to_string() + " of e^" + std::to_string(*v) +
                                        " is not a unit after inverting " + to_string(inverted_));
  if (exact() && terms_.size() == 1) return monomial(*lead_inv, -*v);

  int rel = relative_precision;
  if (precision_) rel = std::min(rel, *precision_ - *v);
  if (rel < 1) fail(ErrorCode::PrecisionExhausted, "no known terms left to invert");

  // x = lead * e^v * (1 + u); (1 + u)^{-1} = sum b_k e^k with b_k = -sum_{j=1..k} u_j b_{k-j}
  std::vector<LocalCoeff> u(static_cast<std::size_t>(rel), LocalCoeff::zero(field_, inverted_));
  for (int k = 1; k < rel; ++k) u[k] = *lead_inv * coefficient(*v + k);
  std::vector<LocalCoeff> b(static_cast<std::size_t>(rel), LocalCoeff::zero(field_, inverted_));
  b[0] = LocalCoeff::one(field_, inverted_);
  for (int k = 1; k < rel; ++k) {
    LocalCoeff acc = LocalCoeff::zero(field_, inverted_);
    for (int j = 1; j <= k; ++j)
      if (!u[j].is_zero() && !b[k - j].is_zero()) acc = acc + u[j] * b[k - j];
    b[k] = -acc;
  }
  LaurentSeries out(field_, inverted_, -*v + rel);
  for (int k = 0; k < rel; ++k) out = out.with_term(k - *v, *lead_inv * b[k]);
  return out;
}

bool LaurentSeries::equals_up_to_precision(const LaurentSeries& other) const {
  require_compatible(other);
  auto prec = min_precision(precision_, other.precision_);
  auto below = [&](int k) { return !prec || k < *prec; };
  for (const auto* s : {this, &other})
    for (const auto& [k, c] : s->terms_)
      if (below(k) && !(coefficient(k) == other.coefficient(k))) return false;
  return true;
}

// ---------------------------------------------------------------- contexts

ContextPtr make_context(const FieldSpec& field, const Integer& inverted, int truncation,
                        std::optional<LaurentSeries> etilde_square) {
  if (truncation < 1) fail(ErrorCode::InvalidArgument, "truncation must be at least 1");
  LaurentSeries sq = etilde_square ? *etilde_square
                                   : LaurentSeries::monomial(LocalCoeff::rational(field, -4, inverted), 1);
  if (!(sq.field() == field) || sq.inverted() != inverted)
    fail(ErrorCode::ContextMismatch, "et^2 is localized differently from the context");
  return std::make_shared<const LocalContext>(LocalContext{field, inverted, truncation, std::move(sq)});
}

// ---------------------------------------------------------------- LocalizedClass

LocalizedClass::LocalizedClass(ContextPtr ctx, TwistParity tag, LaurentSeries series)
    : ctx_(std::move(ctx)), tag_(tag), series_(std::move(series)) {
  if (!ctx_) fail(ErrorCode::Internal, "localized class without a context");
  require_same_field(ctx_->field, series_.field());
  if (ctx_->inverted != series_.inverted())
    fail(ErrorCode::ContextMismatch, "series localized at " + to_string(series_.inverted()) + " in a context at " +
                                         to_string(ctx_->inverted));
}

LocalizedClass LocalizedClass::zero(const ContextPtr& ctx, TwistParity tag) {
  return LocalizedClass(ctx, tag, LaurentSeries(ctx->field, ctx->inverted));
}

LocalizedClass LocalizedClass::one(const ContextPtr& ctx) {
  return monomial(ctx, LocalCoeff::one(ctx->field, ctx->inverted), 0);
}

LocalizedClass LocalizedClass::monomial(const ContextPtr& ctx, const LocalCoeff& c, int exponent, TwistParity tag) {
  return LocalizedClass(ctx, tag, LaurentSeries::monomial(c, exponent));
}

namespace {

void require_same_context(const ContextPtr& a, const ContextPtr& b) {
  if (a != b && !a->compatible_with(*b)) fail(ErrorCode::ContextMismatch, "localized classes from different contexts");
}

}  // namespace

LocalizedClass LocalizedClass::operator+(const LocalizedClass& other) const {
  require_same_context(ctx_, other.ctx_);
  TwistParity tag = tag_;
  if (tag_ != other.tag_) {
    if (is_zero() && series_.exact())
      tag = other.tag_;
    else if (!(other.is_zero() && other.series_.exact()))
      fail(ErrorCode::TagMismatch, "cannot add an untwisted and a twisted class");
  }
  return LocalizedClass(ctx_, tag, series_ + other.series_);
}

LocalizedClass LocalizedClass::operator-() const { return LocalizedClass(ctx_, tag_, -series_); }

LocalizedClass LocalizedClass::operator*(const LocalizedClass& other) const {
  require_same_context(ctx_, other.ctx_);
  LaurentSeries s = series_ * other.series_;
  if (tag_ == TwistParity::Twisted && other.tag_ == TwistParity::Twisted) s = s * ctx_->etilde_square;
  return LocalizedClass(ctx_, tag_ ^ other.tag_, s);
}

LocalizedClass LocalizedClass::inverse() const {
  LaurentSeries inv = series_.inverse(ctx_->truncation);
  if (tag_ == TwistParity::Untwisted) return LocalizedClass(ctx_, tag_, inv);
  // (L et)^{-1} = L^{-1} (et^2)^{-1} et
  return LocalizedClass(ctx_, tag_, inv * ctx_->etilde_square.inverse(ctx_->truncation));
}

bool LocalizedClass::equals(const LocalizedClass& other) const {
  if (!series_.equals_up_to_precision(other.series_)) return false;
  return tag_ == other.tag_ || (is_zero() && other.is_zero());
}

// ---------------------------------------------------------------- free functions

namespace {

LaurentSeries series_from(const PowerSeries& f, const WittClass& constant_shift, const Integer& inverted) {
  LaurentSeries out(f.field(), inverted, f.truncation());
  for (int i = 0; i < f.truncation(); ++i) {
    WittClass c = i == 0 ? f[0] + constant_shift : f[i];
    if (!c.is_zero()) out = out.with_term(i, LocalCoeff::of(c, inverted));
  }
  return out;
}

}  // namespace

LocalizedClass localize(const BNElem& a, const ContextPtr& ctx) {
  require_same_field(a.field(), ctx->field);
  return LocalizedClass(ctx, TwistParity::Untwisted, series_from(a.f(), -a.c(), ctx->inverted));
}

LocalizedClass localize(const BNElem& a, const Integer& inverted) {
  return localize(a, make_context(a.field(), inverted, a.truncation()));
}

LocalizedClass localize(const TwistedElem& t, const ContextPtr& ctx) {
  require_same_field(t.field(), ctx->field);
  if (!t.c1().is_zero())
    fail(ErrorCode::UnreducedQ1Product, "the image of q1 after inverting e is not determined");
  return LocalizedClass(ctx, TwistParity::Twisted, series_from(t.g(), WittClass::zero(t.field()), ctx->inverted));
}

LocalizedClass loc_invert(const LocalizedClass& x) { return x.inverse(); }

LocalCoeff degree(const LocalizedClass& x) {
  if (x.tag() == TwistParity::Twisted && !x.is_zero())
    fail(ErrorCode::TwistedInput, "degree of a twisted class");
  for (const auto& [k, c] : x.series().terms()) {
    if (k >= 0) break;
    fail(ErrorCode::PolePresent, "nonzero coefficient " + c.to_string() + " at e^" + std::to_string(k));
  }
  if (x.precision() && *x.precision() <= 0)
    fail(ErrorCode::PrecisionExhausted, "the constant term is beyond the known precision");
  return x.series().coefficient(0);
}

}  // namespace bnloc
