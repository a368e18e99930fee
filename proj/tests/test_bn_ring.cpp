#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bnloc/bn_ring.hpp"
#include "bnloc/errors.hpp"
#include "bnloc/localized.hpp"
#include "bnloc_checks/checks.hpp"

using namespace bnloc;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const CoeffTheory HW = CoeffTheory::hw();
const CoeffTheory KW = CoeffTheory::kw();
constexpr int T = 16;

BNElem e_() { return BNElem::e(HW, Q, T); }
BNElem q0_() { return BNElem::q0(HW, Q, T); }
BNElem n_(long n) { return BNElem::integer(HW, Q, n, T); }
BNElem sym(long u, int power) {
  return BNElem(HW, PowerSeries::monomial(WittClass::symbol(Q, u), power, T), WittClass::zero(Q));
}
TwistedElem tzero() { return TwistedElem(HW, PowerSeries(Q, T), WittClass::zero(Q)); }

LaurentSeries laurent(const Integer& m, std::optional<int> precision, std::map<int, Rational> terms) {
  LaurentSeries s(Q, m, precision);
  for (const auto& [k, c] : terms) s = s.with_term(k, LocalCoeff::rational(Q, c, m));
  return s;
}

}  // namespace

TEST_CASE("addition examples") {
  CHECK((e_() + q0_()) + (e_() - q0_()) == e_() + e_());
  CHECK(bn_add(e_(), n_(0)) == e_());
  CHECK((sym(2, 2) + sym(-2, 2)).is_zero());
}

TEST_CASE("multiplication examples") {
  CHECK(bn_mul(q0_(), q0_()) == n_(1));
  CHECK(bn_mul(n_(1) + q0_(), e_()).is_zero());
  CHECK(bn_mul(q0_(), e_().pow(3)) == -e_().pow(3));
  CHECK(bn_mul(q0_(), e_().pow(3)) == checks::rewrite_product(q0_(), e_().pow(3)));
}

TEST_CASE("twisted module examples") {
  TwistedElem et = TwistedElem::etilde(HW, Q, T);
  TwistedElem q1 = TwistedElem::q1(HW, Q, T);
  CHECK(twisted_scalar(n_(1) + q0_(), et) == tzero());
  CHECK(twisted_scalar(n_(1) + q0_(), q1) == tzero());
  TwistedElem e_et = twisted_scalar(e_(), et);
  CHECK(e_et.g() == PowerSeries::monomial(WittClass::one(Q), 1, T));
  CHECK(e_et.c1().is_zero());
  CHECK(twisted_scalar(q0_(), q1) == -q1);
  CHECK_THROWS_AS(twisted_scalar(e_(), q1), Error);
  BNElem sq = twisted_product(et, et, BNElem(HW, PowerSeries::monomial(WittClass::integer(Q, -4), 1, T), WittClass::zero(Q)));
  CHECK(sq == e_() * n_(-4));
  CHECK_THROWS_AS(twisted_product(et, q1, sq), Error);
}

TEST_CASE("decompose examples") {
  auto [f1, c1] = decompose(q0_());
  CHECK(f1.is_zero());
  CHECK(c1 == WittClass::one(Q));
  auto [f2, c2] = decompose(e_().pow(2));
  CHECK(f2 == PowerSeries::monomial(WittClass::one(Q), 2, T));
  CHECK(c2.is_zero());
  auto [f3, c3] = decompose(n_(3) + q0_());
  CHECK(f3 == PowerSeries::constant(WittClass::integer(Q, 3), T));
  CHECK(c3 == WittClass::one(Q));
}

TEST_CASE("finite level examples") {
  BNElem a = n_(0);
  for (int i = 0; i < 8; ++i) a = a + e_().pow(i);
  BNElem want = n_(0);
  for (int i = 0; i < 4; ++i) want = want + e_().pow(i);
  CHECK(finite_level(a, 5) == want);
  for (int m : {3, 5, 9}) CHECK(finite_level(q0_(), m) == q0_());
  CHECK(finite_level(e_().pow(2), 3).is_zero());
  CHECK_THROWS_AS(finite_level(a, 4), Error);
  CHECK_THROWS_AS(finite_level(a, 1), Error);
  for (int m : {3, 5, 7}) {
    auto r = checks::check_finite_level(m, 10);
    INFO(r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("finite level idempotence and composition") {
  checks::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    BNElem a = checks::random_bn(rng, HW, Q, 12);
    for (int m : {3, 5, 7, 9})
      for (int m2 : {3, 5, 7, 9}) {
        if (m2 > m) continue;
        CHECK(finite_level(finite_level(a, m), m) == finite_level(a, m));
        CHECK(finite_level(finite_level(a, m), m2) == finite_level(a, m2));
      }
  }
}

TEST_CASE("grading examples") {
  BNElem e_kw = BNElem::e(KW, Q, T);
  CHECK(grading_check(e_kw * e_kw, 4));
  CHECK(grading_check(e_kw, 2));
  CHECK_FALSE(grading_check(e_kw + e_kw * e_kw, 2));
  CHECK(grading_check(sym(2, 3), 6));
  CHECK_FALSE(grading_check(sym(2, 3), 4));
}

TEST_CASE("grading is multiplicative") {
  checks::Rng rng(8);
  std::uniform_int_distribution<int> deg(0, 6);
  for (const auto& theory : {HW, KW}) {
    for (int i = 0; i < 200; ++i) {
      // homogeneous elements: c e^k with k chosen so the coefficient degree lies in the theory
      int n = 2 * deg(rng), n2 = 2 * deg(rng);
      auto homogeneous = [&](int d) {
        BNElem out = BNElem::integer(theory, Q, 0, T);
        for (int k = 0; 2 * k <= d + 8 && k < T; ++k)
          if (theory.contains_degree(d - 2 * k) && std::uniform_int_distribution<int>(0, 1)(rng))
            out = out + BNElem(theory, PowerSeries::monomial(checks::random_witt(rng, Q), k, T), WittClass::zero(Q));
        return out;
      };
      BNElem a = homogeneous(n), b = homogeneous(n2);
      REQUIRE(grading_check(a, n));
      REQUIRE(grading_check(b, n2));
      CHECK(grading_check(a * b, n + n2));
    }
  }
}

TEST_CASE("projective space table") {
  CHECK(proj_space_table(3, 0) == std::vector<ProjSpaceSummand>{{"A(S)", 0}, {"A(S)", 3}});
  CHECK(proj_space_table(3, 1).empty());
  CHECK(proj_space_table(4, 1) == std::vector<ProjSpaceSummand>{{"A(S)", 4}});
  CHECK(proj_space_table(4, 0) == std::vector<ProjSpaceSummand>{{"A(S)", 0}});
  CHECK(proj_space_table(5, -1).empty());
  CHECK_THROWS_AS(proj_space_table(0, 0), Error);
}

TEST_CASE("rewriting oracle on 500 pairs") {
  auto r = checks::check_rewriting(77, 500, 8);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("relation suite") {
  checks::Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    for (const auto& k : {Q, FieldSpec::finite_prime(7)}) {
      BNElem a = checks::random_bn(rng, HW, k, 10);
      BNElem one = BNElem::integer(HW, k, 1, 10), q0 = BNElem::q0(HW, k, 10), e = BNElem::e(HW, k, 10);
      CHECK(bn_mul(one + q0, bn_mul(e, a)).is_zero());
      CHECK(bn_mul(q0, bn_mul(q0, a)) == a);
      BNElem b = checks::random_bn(rng, HW, k, 10);
      CHECK(bn_mul(a, b) == bn_mul(b, a));
    }
  }
}

TEST_CASE("localize examples") {
  CHECK(localize(n_(1) + q0_(), 1).is_zero());
  LocalizedClass x = localize(e_() + q0_(), 1);
  CHECK(x.series().equals_up_to_precision(laurent(1, T, {{0, -1}, {1, 1}})));
  CHECK(localize(e_().pow(2), 1).series().equals_up_to_precision(laurent(1, T, {{2, 1}})));
}

TEST_CASE("localize is a ring homomorphism") {
  checks::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    BNElem a = checks::random_bn(rng, HW, Q, 10), b = checks::random_bn(rng, HW, Q, 10);
    Integer m = i % 2 ? 3 : 1;
    CHECK(localize(a * b, m).equals(localize(a, m) * localize(b, m)));
    CHECK(localize(a + b, m).equals(localize(a, m) + localize(b, m)));
  }
}

TEST_CASE("loc_invert examples") {
  ContextPtr c3 = make_context(Q, 3, 16);
  LocalizedClass x = LocalizedClass::monomial(c3, LocalCoeff::rational(Q, 3, 3), 1);
  LocalizedClass inv = loc_invert(x);
  CHECK(inv.series() == LaurentSeries::monomial(LocalCoeff::rational(Q, Rational(1, 3), 3), -1));

  ContextPtr c2 = make_context(Q, 2, 4);
  LocalizedClass y(c2, TwistParity::Untwisted, laurent(2, std::nullopt, {{1, 2}, {2, 2}}));
  LocalizedClass yi = loc_invert(y);
  LaurentSeries want = laurent(2, 3, {{-1, Rational(1, 2)}, {0, Rational(-1, 2)}, {1, Rational(1, 2)}, {2, Rational(-1, 2)}});
  CHECK(yi.series() == want);

  ContextPtr c1 = make_context(Q, 1, 16);
  CHECK_THROWS_AS(loc_invert(LocalizedClass::monomial(c1, LocalCoeff::rational(Q, 3, 1), 1)), Error);
  CHECK_THROWS_AS(loc_invert(LocalizedClass::zero(c1)), Error);
}

TEST_CASE("loc_invert round trip on unit-leading series") {
  checks::Rng rng(12);
  ContextPtr ctx = make_context(Q, 6, 16);
  int tested = 0;
  for (int i = 0; i < 200; ++i) {
    LocalizedClass x = checks::random_laurent(rng, ctx, -3, 5, TwistParity::Untwisted);
    auto v = x.series().valuation();
    if (!v || !x.series().coefficient(*v).inverse()) continue;
    LocalizedClass prod = x * loc_invert(x);
    CHECK(prod.equals(LocalizedClass::one(ctx)));
    ++tested;
  }
  CHECK(tested > 50);
}

TEST_CASE("coefficient ring W(Q)[1/M]") {
  LocalCoeff t = LocalCoeff::of(witt_class(QForm(Q, {2, -1})), 3);
  CHECK(t.free_part() == 0);
  CHECK_FALSE(t.torsion().is_zero());
  CHECK(LocalCoeff::of(witt_class(QForm(Q, {2, -1})), 2).is_zero());
  CHECK((t * t).is_zero() == (witt_class(QForm(Q, {2, -1})) * witt_class(QForm(Q, {2, -1}))).is_zero());
  LocalCoeff third = LocalCoeff::rational(Q, Rational(1, 3), 3);
  CHECK((third * LocalCoeff::rational(Q, 3, 3)) == LocalCoeff::one(Q, 3));
  CHECK_THROWS_AS(LocalCoeff::rational(Q, Rational(1, 5), 3), Error);
  LocalCoeff u = LocalCoeff::one(Q, 3) + t;
  auto inv = u.inverse();
  REQUIRE(inv);
  CHECK(u * *inv == LocalCoeff::one(Q, 3));
}
