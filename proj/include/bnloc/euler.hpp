#pragma once

#include "bnloc/bn_ring.hpp"
#include "bnloc/localized.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bnloc {

/// Rank-two representation of weight m >= 1 with character twist sign, or
/// for m = 0 the trivial character (+) and the sign character (-).
struct RepLabel {
  int weight = 0;
  bool plus = true;

  int rank() const { return weight == 0 ? 1 : 2; }
  /// "m,+" or "m,-".
  std::string to_string() const;
  /// Accepts "m,+", "m,-" and the Unicode minus sign.
  static RepLabel parse(const std::string& text);

  friend auto operator<=>(const RepLabel&, const RepLabel&) = default;
};

/// Parses a sign written as "+", "-" or the Unicode minus sign.
std::optional<bool> parse_sign(const std::string& text);

/// Homogeneous space type of an induced fixed component.
struct CaseType {
  enum class Kind { A, B, CPlus, CMinus };
  Kind kind;
  int weight;

  /// Throws InvalidArgument on a weight of the wrong parity.
  CaseType(Kind kind, int weight);
  /// "a", "b", "c+" or "c-".
  std::string kind_name() const;
  static Kind parse_kind(const std::string& text);

  friend bool operator==(const CaseType&, const CaseType&) = default;
};

/// Laurent polynomial in e with Witt coefficients, keyed by exponent.
using WittPolynomial = std::map<int, WittClass>;

struct EulerEntry {
  TwistParity tag;
  /// Untwisted: the series f(e). Twisted: g(e) in g(e)*et.
  WittPolynomial value;
};

/// Euler classes of the labelled representations for one coefficient theory.
class EulerTable {
 public:
  /// Built-in table: (m odd,+) = m e and (2n,+) = n et with et^2 = -4e.
  /// The KW table uses the same polynomials; see README for the caveat.
  static EulerTable builtin(const CoeffTheory& theory, const FieldSpec& field, bool sign_flip = false);
  /// Validated custom table. Throws SchemaError when an (m,+) entry does not
  /// lead with +-m<1> (odd m, at e^1) or +-n<1> (m = 2n, constant of g).
  static EulerTable custom(const CoeffTheory& theory, const FieldSpec& field, std::map<RepLabel, EulerEntry> entries,
                           WittPolynomial etilde_square, bool sign_flip = false);

  const CoeffTheory& theory() const { return theory_; }
  const FieldSpec& field() const { return field_; }
  bool sign_flip() const { return sign_flip_; }
  bool is_builtin() const { return builtin_; }
  const WittPolynomial& etilde_square() const { return etilde_square_; }
  const std::map<RepLabel, EulerEntry>& custom_entries() const { return entries_; }

  /// Entry for a label of weight >= 1; throws MissingEntry when absent.
  EulerEntry entry(const RepLabel& rep) const;

 private:
  EulerTable(CoeffTheory theory, FieldSpec field, bool sign_flip, bool builtin, std::map<RepLabel, EulerEntry> entries,
             WittPolynomial etilde_square);

  CoeffTheory theory_;
  FieldSpec field_;
  bool sign_flip_;
  bool builtin_;
  std::map<RepLabel, EulerEntry> entries_;
  WittPolynomial etilde_square_;
};

struct EulerValue {
  TwistParity tag;
  std::variant<BNElem, TwistedElem> value;
  /// Set for rank-one labels, whose Euler class is zero.
  std::optional<std::string> warning;
};

EulerValue euler_class(const RepLabel& rep, const EulerTable& table, int truncation = PowerSeries::kDefaultTruncation);

/// Context whose et^2 is the table's, localized at `inverted`.
ContextPtr table_context(const EulerTable& table, const Integer& inverted, int truncation);

/// Exact localized Euler class of one label; rank-one labels give zero.
LocalizedClass localized_euler(const RepLabel& rep, const EulerTable& table, const ContextPtr& ctx);

/// Product of the Euler classes of all labels.
LocalizedClass euler_of_sum(const std::vector<RepLabel>& reps, const EulerTable& table, const ContextPtr& ctx);

RepLabel annihilator(const CaseType& c);

/// Radical of char_p times the weights of the annihilators and labels. Even
/// weights contribute 2, which the twisted Euler classes need inverted.
Integer localizing_integer(const std::vector<CaseType>& cases, const std::vector<RepLabel>& reps, std::int64_t char_p);

}  // namespace bnloc
