#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bnloc/errors.hpp"
#include "bnloc/expr.hpp"
#include "bnloc/io.hpp"
#include "bnloc_checks/checks.hpp"

#include <chrono>
#include <filesystem>

using namespace bnloc;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const CoeffTheory HW = CoeffTheory::hw();

EulerTable hw() { return EulerTable::builtin(HW, Q); }

LocalCoeff r(const Integer& m, const Rational& x) { return LocalCoeff::rational(Q, x, m); }

FixedComponent point(std::string id, const std::string& cls, std::vector<RepLabel> tangent) {
  FixedComponent c;
  c.id = std::move(id);
  c.local_class = parse_laurent_literal(cls, Q);
  c.tangent_moving = std::move(tangent);
  return c;
}

FixedComponent induced(std::string id, CaseType::Kind kind, int m, const std::string& cls = "0") {
  FixedComponent c;
  c.id = std::move(id);
  c.kind = ComponentKind::Induced;
  c.induced_case = CaseType(kind, m);
  c.local_class = parse_laurent_literal(cls, Q);
  c.flagged = cls != "0";
  return c;
}

LocalizationProblem problem(std::vector<FixedComponent> comps) {
  LocalizationProblem p;
  p.components = std::move(comps);
  return p;
}

LaurentLiteral literal_of(const LocalizedClass& x) {
  LaurentLiteral out;
  out.tag = x.tag();
  for (const auto& [k, c] : x.series().terms()) out.terms.emplace(k, WittFraction::of(c.to_witt()));
  return out;
}

std::vector<std::filesystem::path> fixtures() {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(std::filesystem::path(BNLOC_SOURCE_DIR) / "tests/fixtures"))
    if (entry.path().extension() == ".json") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("virtual normal Euler class examples") {
  ContextPtr c3 = table_context(hw(), 3, 16);
  CHECK(virtual_normal_euler({{3, true}}, {}, hw(), c3).series() == LaurentSeries::monomial(r(3, 3), 1));
  CHECK(virtual_normal_euler({{3, true}}, {{1, true}}, hw(), c3).series() == LaurentSeries::monomial(r(3, 3), 0));
  CHECK(virtual_normal_euler({}, {}, hw(), c3).series() == LaurentSeries::monomial(r(3, 1), 0));
}

TEST_CASE("component contribution examples") {
  ContextPtr c1 = table_context(hw(), 1, 16);
  CHECK(component_contribution(induced("I", CaseType::Kind::CMinus, 1, "e + 3"), hw(), c1).is_zero());
  CHECK(component_contribution(point("P", "1", {{1, true}}), hw(), c1).series() ==
        LaurentSeries::monomial(r(1, 1), -1));
  CHECK(component_contribution(point("P", "e", {{1, true}}), hw(), c1).series() ==
        LaurentSeries::monomial(r(1, 1), 0));
  FixedComponent bad = induced("I", CaseType::Kind::A, 1, "e");
  bad.flagged = false;
  CHECK_THROWS_AS(component_contribution(bad, hw(), c1), Error);
}

TEST_CASE("assemble examples") {
  Assembly a = assemble(problem({point("P", "e", {{1, true}})}), hw());
  CHECK(degree(a.total) == LocalCoeff::one(Q, 1));
  Assembly b = assemble(problem({point("P", "e", {{1, true}}), point("Q", "-e", {{1, true}})}), hw());
  CHECK(b.total.is_zero());
  Assembly c = assemble(problem({point("P", "1", {{3, true}}), induced("I", CaseType::Kind::A, 1, "e")}), hw());
  CHECK(c.inverted == 3);
  CHECK(c.total.series() == LaurentSeries::monomial(r(3, Rational(1, 3)), -1));
  CHECK(c.components.size() == 2);
  CHECK(c.components[1].contribution.is_zero());
}

TEST_CASE("twisted contributions must agree") {
  LocalizationProblem p = problem({point("P", "e", {{1, true}}), point("Q", "1", {{2, true}})});
  try {
    assemble(p, hw());
    FAIL("expected TagMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TagMismatch);
    CHECK(std::string(e.what()).find("'Q'") != std::string::npos);
  }
}

TEST_CASE("degree examples") {
  ContextPtr c1 = table_context(hw(), 1, 16);
  LocalizedClass x = LocalizedClass::monomial(c1, r(1, 2), 0) + LocalizedClass::monomial(c1, r(1, 3), 1);
  CHECK(degree(x) == LocalCoeff::of(WittClass::integer(Q, 2), 1));
  CHECK(degree(x).to_witt() == WittClass::integer(Q, 2));
  try {
    degree(LocalizedClass::monomial(c1, r(1, 1), -1));
    FAIL("expected PolePresent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PolePresent);
  }
  CHECK(degree(LocalizedClass::zero(c1)).is_zero());
  try {
    degree(LocalizedClass::monomial(c1, r(1, 1), 0, TwistParity::Twisted));
    FAIL("expected TwistedInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TwistedInput);
  }
}

TEST_CASE("self intersection and Bott inverse examples") {
  ContextPtr c3 = table_context(hw(), 3, 16);
  CHECK(self_intersection(LocalizedClass::one(c3), {{3, true}}, hw()).series() == LaurentSeries::monomial(r(3, 3), 1));
  CHECK(self_intersection(LocalizedClass::zero(c3), {{3, true}}, hw()).is_zero());
  CHECK(self_intersection(LocalizedClass::monomial(c3, r(3, 1), -1), {{1, true}}, hw()).series() ==
        LaurentSeries::monomial(r(3, 1), 0));

  LocalizationProblem single = problem({point("A", "0", {{3, true}})});
  auto inv = bott_inverse({{"A", LocalizedClass::monomial(c3, r(3, 3), 1)}}, single, hw());
  CHECK(inv.at("A").equals(LocalizedClass::one(c3)));
  CHECK(bott_inverse({{"A", LocalizedClass::zero(c3)}}, single, hw()).at("A").is_zero());

  ContextPtr c1 = table_context(hw(), 1, 16);
  LocalizationProblem pair = problem({point("A", "0", {{1, true}}), point("B", "0", {{1, true}})});
  LocalizedClass e = LocalizedClass::monomial(c1, r(1, 1), 1);
  auto both = bott_inverse({{"A", e}, {"B", e}}, pair, hw());
  CHECK(both.at("A").equals(LocalizedClass::one(c1)));
  CHECK(both.at("B").equals(LocalizedClass::one(c1)));
  CHECK_THROWS_AS(bott_inverse({{"A", e}}, pair, hw()), Error);
}

TEST_CASE("Bott round trip on 50 random problems") {
  auto res = checks::check_bott_round_trip(2024, 50);
  INFO(res.detail);
  CHECK(res.passed);
}

TEST_CASE("induced components can be added and removed") {
  checks::Rng rng(15);
  std::vector<std::pair<CaseType::Kind, int>> cases = {
      {CaseType::Kind::A, 1}, {CaseType::Kind::B, 4}, {CaseType::Kind::CPlus, 6}, {CaseType::Kind::CMinus, 5}};
  for (int i = 0; i < 40; ++i) {
    LocalizationProblem p = checks::random_problem(rng);
    LocalizationProblem with = p;
    auto [kind, m] = cases[static_cast<std::size_t>(i) % cases.size()];
    with.components.push_back(induced("ind", kind, m, i % 2 ? "e + <2>" : "0"));
    Integer big = problem_localizing_integer(with);
    p.invert.push_back(static_cast<std::int64_t>(big));
    Assembly a = assemble(p, hw()), b = assemble(with, hw());
    REQUIRE(a.inverted == b.inverted);
    CHECK(a.total.series().equals_up_to_precision(b.total.series()));
  }
}

TEST_CASE("fixture corpus: truncation stability, induced insensitivity, timing") {
  int stable_checked = 0;
  for (const auto& path : fixtures()) {
    LocalizationProblem p = parse_problem(read_text_file(path));
    EulerTable table = resolve_table(p, path.parent_path());
    std::optional<LocalCoeff> reference;
    bool pole = false;
    for (int t : {8, 16, 32}) {
      p.truncation = t;
      auto start = std::chrono::steady_clock::now();
      LocalizeOutcome out = run_localize(p, table);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      INFO(path.filename().string() << " at T=" << t);
      CHECK(secs < 1.0);
      if (!out.report["checks"]["induced_insensitive"].is_null())
        CHECK(out.report["checks"]["induced_insensitive"].get<bool>());
      try {
        LocalCoeff d = degree(assemble(p, table).total);
        if (reference) CHECK(d == *reference);
        reference = d;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::PolePresent) pole = true;
      }
    }
    if (!pole) ++stable_checked;
  }
  CHECK(stable_checked >= 5);
}

TEST_CASE("pole cancellation on consistent data") {
  checks::Rng rng(99);
  for (int i = 0; i < 40; ++i) {
    LocalizationProblem p = checks::random_problem(rng);
    EulerTable table = hw();
    ContextPtr ctx = table_context(table, problem_localizing_integer(p), p.truncation);
    LocalizedClass g = checks::random_laurent(rng, ctx, 0, 3, TwistParity::Untwisted);
    for (auto& c : p.components) c.local_class = literal_of(self_intersection(g, c.tangent_moving, table));
    Assembly a = assemble(p, table);
    LocalCoeff want = LocalCoeff::rational(Q, static_cast<long>(p.components.size()), a.inverted) *
                      g.series().coefficient(0);
    CHECK(degree(a.total) == want);
  }
}

TEST_CASE("assembly is linear in each component class") {
  checks::Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    LocalizationProblem p = checks::random_problem(rng);
    std::size_t j = static_cast<std::size_t>(i) % p.components.size();
    LaurentLiteral c1 = p.components[j].local_class, c2 = c1;
    for (auto& [k, v] : c2.terms) v = v * WittFraction::rational(Q, 3);
    c2.terms.insert_or_assign(5, WittFraction::of(WittClass::symbol(Q, 7)));
    LocalizationProblem p1 = p, p2 = p, p12 = p;
    p1.components[j].local_class = c1;
    p2.components[j].local_class = c2;
    LaurentLiteral sum = c1;
    for (const auto& [k, v] : c2.terms) {
      auto it = sum.terms.find(k);
      if (it == sum.terms.end()) sum.terms.emplace(k, v);
      else it->second = it->second + v;
    }
    p12.components[j].local_class = sum;
    // the other components are the same on both sides, so compare single-component problems
    for (auto* q : {&p1, &p2, &p12}) q->components = {q->components[j]};
    Assembly a1 = assemble(p1, hw()), a2 = assemble(p2, hw()), a12 = assemble(p12, hw());
    CHECK(a12.total.equals(a1.total + a2.total));
  }
}

TEST_CASE("assembly is deterministic across runs") {
  for (const auto& path : fixtures()) {
    LocalizationProblem p = parse_problem(read_text_file(path));
    EulerTable table = resolve_table(p, path.parent_path());
    std::string first = dump(run_localize(p, table).report);
    for (int i = 0; i < 5; ++i) CHECK(dump(run_localize(p, table).report) == first);
  }
}
