#pragma once

#include "bnloc/arith.hpp"
#include "bnloc/field.hpp"

#include <map>
#include <string>
#include <vector>

namespace bnloc {

/// An element of W(F_p): rank parity and the square class of the signed
/// discriminant (-1)^{r(r-1)/2} det. The four values are 0, <1>, <n> and <1,-n>.
struct ResidueClass {
  bool odd_rank = false;
  bool nonsquare = false;

  bool is_zero() const { return !odd_rank && !nonsquare; }
  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

/// Arithmetic in W(F_p); `minus_one_nonsquare` is p = 3 mod 4.
ResidueClass residue_add(ResidueClass a, ResidueClass b, bool minus_one_nonsquare);
ResidueClass residue_neg(ResidueClass a, bool minus_one_nonsquare);
ResidueClass residue_mul(ResidueClass a, ResidueClass b);

/// Diagonal quadratic form <a_1, ..., a_n> with nonzero entries. Over F_p the
/// entries are stored as residues in [1, p).
class QForm {
 public:
  QForm(FieldSpec field, std::vector<Rational> entries);

  const FieldSpec& field() const { return field_; }
  const std::vector<Rational>& entries() const { return entries_; }
  std::size_t rank() const { return entries_.size(); }

  QForm direct_sum(const QForm& other) const;
  QForm tensor(const QForm& other) const;
  QForm negated() const;

  /// "<a1,a2,...>"; the empty form prints as "<>".
  std::string to_string() const;

  friend bool operator==(const QForm&, const QForm&) = default;

 private:
  FieldSpec field_;
  std::vector<Rational> entries_;
};

/// Canonical element of the Witt ring of a supported field.
///
/// Over Q the class is stored as its signature together with the second
/// residues at odd primes and the residue at 2 (the parity of the number of
/// entries with odd 2-adic valuation). These data determine the class.
class WittClass {
 public:
  static WittClass zero(const FieldSpec& field);
  static WittClass one(const FieldSpec& field) { return symbol(field, Rational(1)); }
  static WittClass integer(const FieldSpec& field, const Integer& n) { return one(field).times(n); }
  /// The rank-one form <u>; throws ZeroElement for u = 0.
  static WittClass symbol(const FieldSpec& field, const Rational& u);
  /// An element of W(F_p) from its invariants; field must be F_p.
  static WittClass from_residue(const FieldSpec& field, ResidueClass r);

  const FieldSpec& field() const { return field_; }
  /// Signature over Q and R; zero for other fields.
  const Integer& signature() const { return signature_; }
  /// Nonzero second residues at odd primes (Q only).
  const std::map<Integer, ResidueClass>& residues() const { return residues_; }
  bool residue_at_two() const { return two_; }
  /// Invariants over F_p; only odd_rank is used over quadratically closed fields.
  ResidueClass finite_invariants() const { return fp_; }

  bool rank_parity() const;
  bool is_zero() const;
  /// Subtracts the signature part: the result lies in the torsion ideal.
  WittClass torsion_part() const;

  WittClass operator+(const WittClass& other) const;
  WittClass operator-() const;
  WittClass operator-(const WittClass& other) const { return *this + (-other); }
  WittClass operator*(const WittClass& other) const;
  WittClass times(const Integer& k) const;

  /// A diagonal form in this class, small and deterministic.
  QForm representative() const;

  /// "0", an integer "k" for k<1>, "<a,b,...>" or "k+<a,b,...>".
  std::string to_string() const;

  friend bool operator==(const WittClass&, const WittClass&) = default;

 private:
  explicit WittClass(FieldSpec field) : field_(field) {}

  FieldSpec field_;
  Integer signature_ = 0;
  std::map<Integer, ResidueClass> residues_;
  bool two_ = false;
  ResidueClass fp_{};
};

WittClass witt_class(const QForm& form);

/// Diagonalizes a symmetric nondegenerate Gram matrix by congruence.
QForm diagonalize(const std::vector<std::vector<Rational>>& gram, const FieldSpec& field);

/// Class of the trace form of k(sqrt d)/k scaled as <2, 2d>.
WittClass trace_form(const Rational& d, const FieldSpec& field);

/// Second residue homomorphism W(Q) -> W(F_p) for an odd prime p.
WittClass second_residue(const WittClass& a, const Integer& p);

/// Every element of W(k) for F_p (four classes) or a quadratically closed
/// field (two classes).
std::vector<WittClass> enumerate_classes(const FieldSpec& field);

/// Squarefree integer in the square class of a nonzero rational.
Integer squarefree_class(const Rational& u);

}  // namespace bnloc
