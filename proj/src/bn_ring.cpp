#include "bnloc/bn_ring.hpp"

#include "bnloc/errors.hpp"

#include <algorithm>

namespace bnloc {

// ---------------------------------------------------------------- CoeffTheory

CoeffTheory::CoeffTheory(Kind kind, std::string name, int modulus, std::vector<int> residues)
    : kind_(kind), name_(std::move(name)), modulus_(modulus), residues_(std::move(residues)) {
  if (modulus_ < 0) fail(ErrorCode::InvalidArgument, "negative degree modulus");
  if (modulus_ > 0)
    for (auto& r : residues_) r = ((r % modulus_) + modulus_) % modulus_;
  std::sort(residues_.begin(), residues_.end());
  residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
}

CoeffTheory CoeffTheory::custom(std::string name, int modulus, std::vector<int> residues) {
  if (residues.empty()) fail(ErrorCode::InvalidArgument, "custom theory needs at least one coefficient degree");
  return CoeffTheory(Kind::Custom, std::move(name), modulus, std::move(residues));
}

CoeffTheory CoeffTheory::parse(const std::string& text) {
  if (text == "HW") return hw();
  if (text == "KW") return kw();
  fail(ErrorCode::ParseError, "unknown theory '" + text + "' (expected HW or KW)");
}

bool CoeffTheory::contains_degree(int d) const {
  if (modulus_ > 0) d = ((d % modulus_) + modulus_) % modulus_;
  return std::binary_search(residues_.begin(), residues_.end(), d);
}

void require_same_theory(const CoeffTheory& a, const CoeffTheory& b) {
  if (!(a == b)) fail(ErrorCode::TheoryMismatch, "theory mismatch: " + a.name() + " vs " + b.name());
}

// ---------------------------------------------------------------- BNElem

BNElem::BNElem(CoeffTheory theory, PowerSeries f, WittClass c, std::optional<int> degree)
    : theory_(std::move(theory)), f_(std::move(f)), c_(std::move(c)), degree_(degree) {
  require_same_field(f_.field(), c_.field());
  if (degree_ && !grading_check(*this, *degree_))
    fail(ErrorCode::InvalidArgument, "element is not homogeneous of degree " + std::to_string(*degree_));
}

BNElem BNElem::constant(const CoeffTheory& theory, const WittClass& c, int truncation) {
  return BNElem(theory, PowerSeries::constant(c, truncation), WittClass::zero(c.field()));
}

BNElem BNElem::integer(const CoeffTheory& theory, const FieldSpec& field, long n, int truncation) {
  return constant(theory, WittClass::integer(field, n), truncation);
}

BNElem BNElem::e(const CoeffTheory& theory, const FieldSpec& field, int truncation) {
  return BNElem(theory, PowerSeries::monomial(WittClass::one(field), 1, truncation), WittClass::zero(field));
}

BNElem BNElem::q0(const CoeffTheory& theory, const FieldSpec& field, int truncation) {
  return BNElem(theory, PowerSeries(field, truncation), WittClass::one(field));
}

namespace {

std::optional<int> same_degree(const std::optional<int>& a, const std::optional<int>& b) {
  if (a && b && *a == *b) return a;
  return std::nullopt;
}

std::optional<int> degree_sum(const std::optional<int>& a, const std::optional<int>& b) {
  if (a && b) return *a + *b;
  return std::nullopt;
}

}  // namespace

BNElem BNElem::operator+(const BNElem& other) const {
  require_same_theory(theory_, other.theory_);
  BNElem out(theory_, f_ + other.f_, c_ + other.c_);
  out.degree_ = same_degree(degree_, other.degree_);
  return out;
}

BNElem BNElem::operator-() const {
  BNElem out(theory_, -f_, -c_);
  out.degree_ = degree_;
  return out;
}

BNElem BNElem::operator*(const BNElem& other) const {
  require_same_theory(theory_, other.theory_);
  const PowerSeries& g = other.f_;
  const WittClass& d = other.c_;
  const WittClass& f0 = f_.constant_term();
  const WittClass& g0 = g.constant_term();
  // q0^2 = 1 and q0*e = -e leave only constants of one factor meeting q0 of the other
  PowerSeries e_part = f_ * g - g.without_constant().scaled(c_) - f_.without_constant().scaled(d);
  e_part = e_part.with_coefficient(0, e_part.constant_term() + c_ * d);
  BNElem out(theory_, e_part, c_ * g0 + d * f0);
  out.degree_ = degree_sum(degree_, other.degree_);
  return out;
}

BNElem BNElem::pow(int exponent) const {
  if (exponent < 0) fail(ErrorCode::InvalidArgument, "negative power in the ring");
  BNElem out = BNElem::constant(theory_, WittClass::one(field()), truncation());
  BNElem base = *this;
  while (exponent > 0) {
    if (exponent & 1) out = out * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return out;
}

namespace {

std::string scaled_symbol(const WittClass& c, const std::string& symbol) {
  std::string coef = c.to_string();
  if (coef == "1") return symbol;
  if (coef.find('+') != std::string::npos) coef = "(" + coef + ")";
  return coef + "*" + symbol;
}

std::string join_terms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) out += " + " + terms[i];
  return out;
}

}  // namespace

std::string BNElem::to_string() const {
  std::vector<std::string> terms;
  if (!f_.is_zero()) terms.push_back(f_.to_string());
  if (!c_.is_zero()) terms.push_back(scaled_symbol(c_, "q0"));
  return join_terms(terms);
}

// ---------------------------------------------------------------- TwistedElem

TwistedElem::TwistedElem(CoeffTheory theory, PowerSeries g, WittClass c1)
    : theory_(std::move(theory)), g_(std::move(g)), c1_(std::move(c1)) {
  require_same_field(g_.field(), c1_.field());
}

TwistedElem TwistedElem::etilde(const CoeffTheory& theory, const FieldSpec& field, int truncation) {
  return TwistedElem(theory, PowerSeries::constant(WittClass::one(field), truncation), WittClass::zero(field));
}

TwistedElem TwistedElem::q1(const CoeffTheory& theory, const FieldSpec& field, int truncation) {
  return TwistedElem(theory, PowerSeries(field, truncation), WittClass::one(field));
}

TwistedElem TwistedElem::operator+(const TwistedElem& other) const {
  require_same_theory(theory_, other.theory_);
  return TwistedElem(theory_, g_ + other.g_, c1_ + other.c1_);
}

TwistedElem TwistedElem::operator-() const { return TwistedElem(theory_, -g_, -c1_); }

std::string TwistedElem::to_string() const {
  std::vector<std::string> terms;
  for (int i = 0; i < g_.truncation(); ++i) {
    if (g_[i].is_zero()) continue;
    std::string mono = i == 0 ? "et" : (i == 1 ? "e*et" : "e^" + std::to_string(i) + "*et");
    terms.push_back(scaled_symbol(g_[i], mono));
  }
  if (!c1_.is_zero()) terms.push_back(scaled_symbol(c1_, "q1"));
  return join_terms(terms);
}

// ---------------------------------------------------------------- operations

BNElem bn_add(const BNElem& a, const BNElem& b) { return a + b; }
BNElem bn_mul(const BNElem& a, const BNElem& b) { return a * b; }
TwistedElem twisted_add(const TwistedElem& a, const TwistedElem& b) { return a + b; }

TwistedElem twisted_scalar(const BNElem& b, const TwistedElem& t) {
  require_same_theory(b.theory(), t.theory());
  const WittClass& c = b.c();
  if (!t.c1().is_zero() && !b.f().without_constant().is_zero())
    fail(ErrorCode::UnreducedQ1Product, "the product of e^i (i >= 1) with q1 is not determined by the relations");
  // q0*et = -et and q0*q1 = -q1
  PowerSeries g = b.f() * t.g() - t.g().scaled(c);
  WittClass c1 = b.f().constant_term() * t.c1() - c * t.c1();
  return TwistedElem(t.theory(), g, c1);
}

BNElem twisted_product(const TwistedElem& a, const TwistedElem& b, const BNElem& etilde_square) {
  require_same_theory(a.theory(), b.theory());
  if (!a.c1().is_zero() || !b.c1().is_zero())
    fail(ErrorCode::UnreducedQ1Product, "products involving q1 in the untwisted ring are not determined");
  BNElem gh(a.theory(), a.g() * b.g(), WittClass::zero(a.field()));
  return gh * etilde_square;
}

std::pair<PowerSeries, WittClass> decompose(const BNElem& a) { return {a.f(), a.c()}; }

BNElem finite_level(const BNElem& a, int m) {
  if (m % 2 == 0) fail(ErrorCode::EvenLevel, "finite level needs odd m, got " + std::to_string(m));
  if (m < 3) fail(ErrorCode::InvalidArgument, "finite level needs m >= 3, got " + std::to_string(m));
  PowerSeries f = a.f();
  for (int i = m - 1; i < f.truncation(); ++i) f = f.with_coefficient(i, WittClass::zero(a.field()));
  return BNElem(a.theory(), f, a.c(), a.degree());
}

bool grading_check(const BNElem& a, int n) {
  for (int i = 0; i < a.f().truncation(); ++i)
    if (!a.f()[i].is_zero() && !a.theory().contains_degree(n - 2 * i)) return false;
  return a.c().is_zero() || a.theory().contains_degree(n);
}

bool grading_check(const TwistedElem& t, int n) {
  for (int i = 0; i < t.g().truncation(); ++i)
    if (!t.g()[i].is_zero() && !t.theory().contains_degree(n - 2 * i - 2)) return false;
  return t.c1().is_zero() || t.theory().contains_degree(n);
}

std::vector<ProjSpaceSummand> proj_space_table(int n, int twist) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "projective space dimension must be >= 1");
  bool twisted = ((twist % 2) + 2) % 2 == 1;
  if (n % 2 == 1) {
    if (twisted) return {};
    return {{"A(S)", 0}, {"A(S)", n}};
  }
  if (twisted) return {{"A(S)", n}};
  return {{"A(S)", 0}};
}

}  // namespace bnloc
