#pragma once

#include "bnloc/euler.hpp"
#include "bnloc/local_coeff.hpp"
#include "bnloc/localized.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bnloc {

/// Laurent polynomial with context-free coefficients and a twist tag; the
/// form in which component classes are written before M is known.
struct LaurentLiteral {
  TwistParity tag = TwistParity::Untwisted;
  std::map<int, WittFraction> terms;

  bool is_zero() const;
  LocalizedClass realize(const ContextPtr& ctx) const;
  friend bool operator==(const LaurentLiteral& a, const LaurentLiteral& b);
};

enum class ComponentKind { NFixed, FreePair, Induced };

struct VirtualData {
  std::vector<RepLabel> e0_moving;
  std::vector<RepLabel> e1_moving;
  friend bool operator==(const VirtualData&, const VirtualData&) = default;
};

struct FixedComponent {
  std::string id;
  ComponentKind kind = ComponentKind::NFixed;
  std::optional<CaseType> induced_case;
  LaurentLiteral local_class;
  /// Marks an induced component whose nonzero class is known to die after localization.
  bool flagged = false;
  std::vector<RepLabel> tangent_moving;
  std::optional<VirtualData> virtual_data;

  friend bool operator==(const FixedComponent&, const FixedComponent&) = default;
};

struct LocalizationProblem {
  FieldSpec field = FieldSpec::rationals();
  CoeffTheory theory = CoeffTheory::hw();
  std::vector<FixedComponent> components;
  int truncation = PowerSeries::kDefaultTruncation;
  std::int64_t char_p = 0;
  /// Extra integers folded into M.
  std::vector<std::int64_t> invert;
  bool sign_flip = false;
  std::optional<std::string> custom_table;
  std::optional<LaurentLiteral> expected_degree;

  friend bool operator==(const LocalizationProblem&, const LocalizationProblem&) = default;
};

/// Labels whose Euler class is the normal Euler class of the component.
std::vector<RepLabel> normal_labels(const FixedComponent& c);

/// Localizing integer for a problem: case types, all labels, char_p and the
/// extra inverted integers.
Integer problem_localizing_integer(const LocalizationProblem& problem);

LocalizedClass virtual_normal_euler(const std::vector<RepLabel>& e0_moving, const std::vector<RepLabel>& e1_moving,
                                    const EulerTable& table, const ContextPtr& ctx);

/// Normal Euler class from virtual data when present, else from the tangent labels.
LocalizedClass normal_euler(const FixedComponent& comp, const EulerTable& table, const ContextPtr& ctx);

LocalizedClass component_contribution(const FixedComponent& comp, const EulerTable& table, const ContextPtr& ctx);

struct ComponentResult {
  std::string id;
  LocalizedClass contribution;
};

struct Assembly {
  ContextPtr context;
  Integer inverted;
  std::vector<ComponentResult> components;
  LocalizedClass total;
};

/// Sum of all component contributions. Contributions are computed in
/// parallel; the sum is formed in component order.
Assembly assemble(const LocalizationProblem& problem, const EulerTable& table);

LocalizedClass self_intersection(const LocalizedClass& y, const std::vector<RepLabel>& normal, const EulerTable& table);

/// restriction_j / e(N_j) for every component that is not induced.
std::map<std::string, LocalizedClass> bott_inverse(const std::map<std::string, LocalizedClass>& restrictions,
                                                   const LocalizationProblem& problem, const EulerTable& table);

}  // namespace bnloc
