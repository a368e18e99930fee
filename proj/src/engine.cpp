#include "bnloc/engine.hpp"

#include "bnloc/errors.hpp"

#include <future>

namespace bnloc {

bool LaurentLiteral::is_zero() const {
  for (const auto& [k, c] : terms)
    if (!c.is_zero()) return false;
  return true;
}

LocalizedClass LaurentLiteral::realize(const ContextPtr& ctx) const {
  LaurentSeries s(ctx->field, ctx->inverted);
  for (const auto& [k, c] : terms) {
    require_same_field(c.numerator.field(), ctx->field);
    s = s + LaurentSeries::monomial(LocalCoeff::of(c, ctx->inverted), k);
  }
  return LocalizedClass(ctx, tag, s);
}

bool operator==(const LaurentLiteral& a, const LaurentLiteral& b) {
  if (a.tag != b.tag || a.terms.size() != b.terms.size()) return false;
  for (auto ia = a.terms.begin(), ib = b.terms.begin(); ia != a.terms.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !(ia->second.numerator == ib->second.numerator) ||
        ia->second.denominator != ib->second.denominator)
      return false;
  }
  return true;
}

std::vector<RepLabel> normal_labels(const FixedComponent& c) {
  if (!c.virtual_data) return c.tangent_moving;
  std::vector<RepLabel> out = c.virtual_data->e0_moving;
  out.insert(out.end(), c.virtual_data->e1_moving.begin(), c.virtual_data->e1_moving.end());
  return out;
}

Integer problem_localizing_integer(const LocalizationProblem& problem) {
  std::vector<CaseType> cases;
  std::vector<RepLabel> reps;
  for (const auto& c : problem.components) {
    if (c.induced_case) cases.push_back(*c.induced_case);
    auto labels = normal_labels(c);
    reps.insert(reps.end(), labels.begin(), labels.end());
  }
  Integer m = localizing_integer(cases, reps, problem.char_p);
  for (auto n : problem.invert) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "inverted integers must be positive");
    m *= n;
  }
  return radical(m);
}

LocalizedClass virtual_normal_euler(const std::vector<RepLabel>& e0_moving, const std::vector<RepLabel>& e1_moving,
                                    const EulerTable& table, const ContextPtr& ctx) {
  return euler_of_sum(e0_moving, table, ctx) * euler_of_sum(e1_moving, table, ctx).inverse();
}

LocalizedClass normal_euler(const FixedComponent& comp, const EulerTable& table, const ContextPtr& ctx) {
  if (comp.virtual_data)
    return virtual_normal_euler(comp.virtual_data->e0_moving, comp.virtual_data->e1_moving, table, ctx);
  return euler_of_sum(comp.tangent_moving, table, ctx);
}

LocalizedClass component_contribution(const FixedComponent& comp, const EulerTable& table, const ContextPtr& ctx) {
  if (comp.kind == ComponentKind::Induced) {
    if (!comp.local_class.is_zero() && !comp.flagged)
      fail(ErrorCode::SchemaError, "induced component '" + comp.id + "' carries a nonzero class without the flag");
    return LocalizedClass::zero(ctx);
  }
  try {
    return comp.local_class.realize(ctx) * normal_euler(comp, table, ctx).inverse();
  } catch (const Error& err) {
    throw Error(err.code(), "component '" + comp.id + "': " + err.what());
  }
}

Assembly assemble(const LocalizationProblem& problem, const EulerTable& table) {
  if (problem.components.empty()) fail(ErrorCode::SchemaError, "a problem needs at least one component");
  require_same_field(problem.field, table.field());
  require_same_theory(problem.theory, table.theory());
  Integer m = problem_localizing_integer(problem);
  ContextPtr ctx = table_context(table, m, problem.truncation);

  std::vector<std::future<LocalizedClass>> pending;
  pending.reserve(problem.components.size());
  for (const auto& comp : problem.components)
    pending.push_back(std::async(std::launch::async, [&comp, &table, ctx] {
      return component_contribution(comp, table, ctx);
    }));

  Assembly out{ctx, m, {}, LocalizedClass::zero(ctx)};
  std::vector<LocalizedClass> values;
  for (auto& f : pending) values.push_back(f.get());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& comp = problem.components[i];
    try {
      out.total = out.total + values[i];
    } catch (const Error& err) {
      if (err.code() != ErrorCode::TagMismatch) throw;
      fail(ErrorCode::TagMismatch, "component '" + comp.id + "' contributes a " + to_string(values[i].tag()) +
                                       " class to a " + to_string(out.total.tag()) + " sum");
    }
    out.components.push_back({comp.id, values[i]});
  }
  return out;
}

LocalizedClass self_intersection(const LocalizedClass& y, const std::vector<RepLabel>& normal, const EulerTable& table) {
  return y * euler_of_sum(normal, table, y.context());
}

std::map<std::string, LocalizedClass> bott_inverse(const std::map<std::string, LocalizedClass>& restrictions,
                                                   const LocalizationProblem& problem, const EulerTable& table) {
  std::map<std::string, LocalizedClass> out;
  for (const auto& comp : problem.components) {
    if (comp.kind == ComponentKind::Induced) continue;
    auto it = restrictions.find(comp.id);
    if (it == restrictions.end()) fail(ErrorCode::MissingRestriction, "no restriction for component '" + comp.id + "'");
    const LocalizedClass& r = it->second;
    out.emplace(comp.id, r * normal_euler(comp, table, r.context()).inverse());
  }
  return out;
}

}  // namespace bnloc
