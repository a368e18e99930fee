#pragma once

#include "bnloc/power_series.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bnloc {

/// Coefficient theory: which degrees carry a copy of W(k).
/// HW has W(k) in degree 0 only, KW in every degree divisible by 4; a custom
/// theory lists residues modulo a modulus (modulus 0 means an exact list).
class CoeffTheory {
 public:
  enum class Kind { HW, KW, Custom };

  static CoeffTheory hw() { return CoeffTheory(Kind::HW, "HW", 0, {0}); }
  static CoeffTheory kw() { return CoeffTheory(Kind::KW, "KW", 4, {0}); }
  static CoeffTheory custom(std::string name, int modulus, std::vector<int> residues);
  /// "HW" or "KW".
  static CoeffTheory parse(const std::string& text);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int modulus() const { return modulus_; }
  const std::vector<int>& residues() const { return residues_; }
  bool contains_degree(int d) const;

  friend bool operator==(const CoeffTheory&, const CoeffTheory&) = default;

 private:
  CoeffTheory(Kind kind, std::string name, int modulus, std::vector<int> residues);

  Kind kind_;
  std::string name_;
  int modulus_;
  std::vector<int> residues_;
};

/// Element f(e) + c*q0 of the cohomology ring of BN in normal form.
class BNElem {
 public:
  /// When `degree` is given the element must pass grading_check for it.
  BNElem(CoeffTheory theory, PowerSeries f, WittClass c, std::optional<int> degree = std::nullopt);

  static BNElem constant(const CoeffTheory& theory, const WittClass& c, int truncation);
  static BNElem integer(const CoeffTheory& theory, const FieldSpec& field, long n, int truncation);
  static BNElem e(const CoeffTheory& theory, const FieldSpec& field, int truncation);
  static BNElem q0(const CoeffTheory& theory, const FieldSpec& field, int truncation);

  const CoeffTheory& theory() const { return theory_; }
  const FieldSpec& field() const { return f_.field(); }
  const PowerSeries& f() const { return f_; }
  const WittClass& c() const { return c_; }
  const std::optional<int>& degree() const { return degree_; }
  int truncation() const { return f_.truncation(); }
  bool is_zero() const { return f_.is_zero() && c_.is_zero(); }

  BNElem operator+(const BNElem& other) const;
  BNElem operator-() const;
  BNElem operator-(const BNElem& other) const { return *this + (-other); }
  BNElem operator*(const BNElem& other) const;
  BNElem pow(int exponent) const;

  std::string to_string() const;

  /// Normal-form equality; the asserted degree is bookkeeping and is ignored.
  friend bool operator==(const BNElem& a, const BNElem& b) {
    return a.theory_ == b.theory_ && a.f_ == b.f_ && a.c_ == b.c_;
  }

 private:
  CoeffTheory theory_;
  PowerSeries f_;
  WittClass c_;
  std::optional<int> degree_;
};

/// Element g(e)*et + c1*q1 of the twisted module, et the twisted Euler class
/// of degree 2 and q1 the degree-0 twisted class.
class TwistedElem {
 public:
  TwistedElem(CoeffTheory theory, PowerSeries g, WittClass c1);

  static TwistedElem etilde(const CoeffTheory& theory, const FieldSpec& field, int truncation);
  static TwistedElem q1(const CoeffTheory& theory, const FieldSpec& field, int truncation);

  const CoeffTheory& theory() const { return theory_; }
  const FieldSpec& field() const { return g_.field(); }
  const PowerSeries& g() const { return g_; }
  const WittClass& c1() const { return c1_; }
  int truncation() const { return g_.truncation(); }
  bool is_zero() const { return g_.is_zero() && c1_.is_zero(); }

  TwistedElem operator+(const TwistedElem& other) const;
  TwistedElem operator-() const;
  TwistedElem operator-(const TwistedElem& other) const { return *this + (-other); }

  std::string to_string() const;

  friend bool operator==(const TwistedElem&, const TwistedElem&) = default;

 private:
  CoeffTheory theory_;
  PowerSeries g_;
  WittClass c1_;
};

BNElem bn_add(const BNElem& a, const BNElem& b);
BNElem bn_mul(const BNElem& a, const BNElem& b);
TwistedElem twisted_add(const TwistedElem& a, const TwistedElem& b);

/// Module action of the ring on the twisted module. Products of e^i (i >= 1)
/// with a nonzero q1 coefficient are not determined and raise UnreducedQ1Product.
TwistedElem twisted_scalar(const BNElem& b, const TwistedElem& t);

/// Product of two twisted elements using et^2 = `etilde_square`. Any q1
/// coefficient raises UnreducedQ1Product.
BNElem twisted_product(const TwistedElem& a, const TwistedElem& b, const BNElem& etilde_square);

/// Splits a = f + c*q0 into the part pulled back from BSL2 and the boundary c.
std::pair<PowerSeries, WittClass> decompose(const BNElem& a);

/// Image at the finite level B_mN, m odd >= 3: kills e^i for i >= m-1.
BNElem finite_level(const BNElem& a, int m);

/// True iff every nonzero coefficient sits in a coefficient degree of the theory
/// once deg(e) = 2 and deg(q0) = 0 are accounted for.
bool grading_check(const BNElem& a, int n);
bool grading_check(const TwistedElem& t, int n);

struct ProjSpaceSummand {
  std::string source;
  int shift;
  friend bool operator==(const ProjSpaceSummand&, const ProjSpaceSummand&) = default;
};

/// Decomposition of the cohomology of P^n with twist k (mod 2) into shifted
/// copies of the coefficients.
std::vector<ProjSpaceSummand> proj_space_table(int n, int twist);

void require_same_theory(const CoeffTheory& a, const CoeffTheory& b);

}  // namespace bnloc
