#include "bnloc/euler.hpp"

#include "bnloc/errors.hpp"

#include <cctype>

namespace bnloc {

// ---------------------------------------------------------------- labels

std::optional<bool> parse_sign(const std::string& text) {
  if (text == "+") return true;
  if (text == "-" || text == "−") return false;
  return std::nullopt;
}

std::string RepLabel::to_string() const { return std::to_string(weight) + (plus ? ",+" : ",-"); }

RepLabel RepLabel::parse(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) fail(ErrorCode::ParseError, "representation label '" + text + "' needs the form m,sign");
  std::string digits = text.substr(0, comma);
  std::string sign = text.substr(comma + 1);
  auto trim = [](std::string& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  };
  trim(digits);
  trim(sign);
  bool numeric = !digits.empty() && digits.size() <= 9;
  for (char c : digits) numeric = numeric && std::isdigit(static_cast<unsigned char>(c));
  auto plus = parse_sign(sign);
  if (!numeric || !plus) fail(ErrorCode::ParseError, "malformed representation label '" + text + "'");
  return RepLabel{std::stoi(digits), *plus};
}

CaseType::CaseType(Kind k, int m) : kind(k), weight(m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "case weight must be >= 1");
  if ((k == Kind::B || k == Kind::CPlus) && m % 2 != 0)
    fail(ErrorCode::InvalidArgument, "case " + kind_name() + " needs an even weight, got " + std::to_string(m));
  if (k == Kind::CMinus && m % 2 == 0)
    fail(ErrorCode::InvalidArgument, "case c- needs an odd weight, got " + std::to_string(m));
}

std::string CaseType::kind_name() const {
  switch (kind) {
    case Kind::A: return "a";
    case Kind::B: return "b";
    case Kind::CPlus: return "c+";
    case Kind::CMinus: return "c-";
  }
  return "?";
}

CaseType::Kind CaseType::parse_kind(const std::string& text) {
  if (text == "a") return Kind::A;
  if (text == "b") return Kind::B;
  if (text == "c+") return Kind::CPlus;
  if (text == "c-" || text == "c−") return Kind::CMinus;
  fail(ErrorCode::ParseError, "unknown case type '" + text + "'");
}

// ---------------------------------------------------------------- tables

namespace {

WittPolynomial negated(const WittPolynomial& p) {
  WittPolynomial out;
  for (const auto& [k, c] : p) out.emplace(k, -c);
  return out;
}

WittClass coefficient_of(const WittPolynomial& p, int k, const FieldSpec& field) {
  auto it = p.find(k);
  return it == p.end() ? WittClass::zero(field) : it->second;
}

void validate_entry(const RepLabel& rep, const EulerEntry& entry, const FieldSpec& field) {
  auto bad = [&](const std::string& why) { fail(ErrorCode::SchemaError, "entry " + rep.to_string() + ": " + why); };
  if (rep.weight < 1) bad("rank-one labels have no table entry");
  for (const auto& [k, c] : entry.value) {
    if (k < 0) bad("negative exponent");
    if (!(c.field() == field)) bad("coefficient over the wrong field");
  }
  if (!rep.plus) return;
  if (rep.weight % 2 == 1) {
    if (entry.tag != TwistParity::Untwisted) bad("odd weight entries are untwisted");
    if (!coefficient_of(entry.value, 0, field).is_zero()) bad("constant term must vanish");
    WittClass lead = coefficient_of(entry.value, 1, field);
    WittClass m = WittClass::integer(field, rep.weight);
    if (!(lead == m || lead == -m)) bad("leading coefficient " + lead.to_string() + " is not +-" + std::to_string(rep.weight));
  } else {
    if (entry.tag != TwistParity::Twisted) bad("even weight entries are twisted");
    WittClass lead = coefficient_of(entry.value, 0, field);
    WittClass n = WittClass::integer(field, rep.weight / 2);
    if (!(lead == n || lead == -n))
      bad("leading coefficient " + lead.to_string() + " is not +-" + std::to_string(rep.weight / 2));
  }
}

}  // namespace

EulerTable::EulerTable(CoeffTheory theory, FieldSpec field, bool sign_flip, bool builtin,
                       std::map<RepLabel, EulerEntry> entries, WittPolynomial etilde_square)
    : theory_(std::move(theory)),
      field_(field),
      sign_flip_(sign_flip),
      builtin_(builtin),
      entries_(std::move(entries)),
      etilde_square_(std::move(etilde_square)) {}

EulerTable EulerTable::builtin(const CoeffTheory& theory, const FieldSpec& field, bool sign_flip) {
  if (theory.kind() == CoeffTheory::Kind::Custom)
    fail(ErrorCode::TheoryMismatch, "custom theories need a custom table");
  return EulerTable(theory, field, sign_flip, true, {}, {{1, WittClass::integer(field, -4)}});
}

EulerTable EulerTable::custom(const CoeffTheory& theory, const FieldSpec& field, std::map<RepLabel, EulerEntry> entries,
                              WittPolynomial etilde_square, bool sign_flip) {
  for (const auto& [rep, entry] : entries) validate_entry(rep, entry, field);
  for (const auto& [k, c] : etilde_square) {
    if (k < 0) fail(ErrorCode::SchemaError, "etilde_square: negative exponent");
    if (!(c.field() == field)) fail(ErrorCode::SchemaError, "etilde_square: coefficient over the wrong field");
  }
  return EulerTable(theory, field, sign_flip, false, std::move(entries), std::move(etilde_square));
}

EulerEntry EulerTable::entry(const RepLabel& rep) const {
  if (rep.weight < 1) fail(ErrorCode::MissingEntry, "rank-one label " + rep.to_string() + " has no table entry");
  EulerEntry out;
  if (builtin_) {
    if (!rep.plus)
      fail(ErrorCode::MissingEntry, "Euler class of " + rep.to_string() + " is only available from a custom table");
    if (rep.weight % 2 == 1)
      out = {TwistParity::Untwisted, {{1, WittClass::integer(field_, rep.weight)}}};
    else
      out = {TwistParity::Twisted, {{0, WittClass::integer(field_, rep.weight / 2)}}};
  } else {
    auto it = entries_.find(rep);
    if (it == entries_.end()) fail(ErrorCode::MissingEntry, "no table entry for " + rep.to_string());
    out = it->second;
  }
  if (sign_flip_) out.value = negated(out.value);
  return out;
}

// ---------------------------------------------------------------- operations

EulerValue euler_class(const RepLabel& rep, const EulerTable& table, int truncation) {
  const FieldSpec& k = table.field();
  if (rep.weight == 0) {
    BNElem zero(table.theory(), PowerSeries(k, truncation), WittClass::zero(k));
    return {TwistParity::Untwisted, zero, "rank-one Euler classes vanish; " + rep.to_string() + " gives 0"};
  }
  EulerEntry entry = table.entry(rep);
  PowerSeries series(k, truncation);
  for (const auto& [i, c] : entry.value)
    if (i < truncation) series = series.with_coefficient(i, c);
  if (entry.tag == TwistParity::Untwisted)
    return {entry.tag, BNElem(table.theory(), series, WittClass::zero(k)), std::nullopt};
  return {entry.tag, TwistedElem(table.theory(), series, WittClass::zero(k)), std::nullopt};
}

namespace {

LaurentSeries exact_series(const WittPolynomial& p, const FieldSpec& field, const Integer& inverted) {
  LaurentSeries out(field, inverted);
  for (const auto& [k, c] : p) out = out.with_term(k, LocalCoeff::of(c, inverted));
  return out;
}

}  // namespace

ContextPtr table_context(const EulerTable& table, const Integer& inverted, int truncation) {
  return make_context(table.field(), inverted, truncation,
                      exact_series(table.etilde_square(), table.field(), inverted));
}

LocalizedClass localized_euler(const RepLabel& rep, const EulerTable& table, const ContextPtr& ctx) {
  require_same_field(table.field(), ctx->field);
  if (rep.weight == 0)
    return LocalizedClass::zero(ctx, rep.plus ? TwistParity::Untwisted : TwistParity::Twisted);
  EulerEntry entry = table.entry(rep);
  return LocalizedClass(ctx, entry.tag, exact_series(entry.value, ctx->field, ctx->inverted));
}

LocalizedClass euler_of_sum(const std::vector<RepLabel>& reps, const EulerTable& table, const ContextPtr& ctx) {
  LocalizedClass out = LocalizedClass::one(ctx);
  for (const auto& rep : reps) out = out * localized_euler(rep, table, ctx);
  return out;
}

RepLabel annihilator(const CaseType& c) {
  switch (c.kind) {
    case CaseType::Kind::A: return {1, true};
    case CaseType::Kind::B:
    case CaseType::Kind::CPlus: return {c.weight, true};
    case CaseType::Kind::CMinus: return {2 * c.weight, true};
  }
  fail(ErrorCode::Internal, "unknown case type");
}

Integer localizing_integer(const std::vector<CaseType>& cases, const std::vector<RepLabel>& reps, std::int64_t char_p) {
  if (char_p < 0) fail(ErrorCode::InvalidArgument, "negative characteristic");
  Integer product = char_p > 1 ? Integer(char_p) : Integer(1);
  for (const auto& c : cases) product *= annihilator(c).weight;
  for (const auto& r : reps)
    if (r.weight > 0) product *= r.weight;
  return radical(product);
}

}  // namespace bnloc
