#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bnloc/errors.hpp"
#include "bnloc/witt.hpp"
#include "bnloc_checks/checks.hpp"

#include <random>

using namespace bnloc;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec R = FieldSpec::reals();

QForm form(const FieldSpec& k, std::vector<long> entries) {
  std::vector<Rational> r(entries.begin(), entries.end());
  return QForm(k, r);
}

WittClass cls(const FieldSpec& k, std::vector<long> entries) { return witt_class(form(k, entries)); }

// Hilbert symbols over Q_p for nonzero integers.
long valuation(long& x, long p) {
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

int legendre_brute(long u, long p) {
  long r = ((u % p) + p) % p;
  for (long y = 1; y < p; ++y)
    if (y * y % p == r) return 1;
  return -1;
}

int hilbert(long a, long b, long p) {
  long u = a, v = b;
  long alpha = valuation(u, p), beta = valuation(v, p);
  if (p != 2) {
    int sign = ((alpha * beta) % 2 == 1 && ((p - 1) / 2) % 2 == 1) ? -1 : 1;
    if (beta % 2) sign *= legendre_brute(u, p);
    if (alpha % 2) sign *= legendre_brute(v, p);
    return sign;
  }
  auto eps = [](long x) { return (((x - 1) / 2) % 2 + 2) % 2; };
  auto omega = [](long x) {
    long m = ((x % 8) + 8) % 8;
    return (m * m - 1) / 8 % 2;
  };
  long e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
  return e % 2 ? -1 : 1;
}

/// Hyperbolicity by the Hasse-Minkowski classification: rank, signature,
/// discriminant and Hasse invariants at every relevant prime.
bool hyperbolic_oracle(const std::vector<long>& entries) {
  std::size_t n = entries.size();
  if (n % 2) return false;
  long pos = 0;
  for (long a : entries) pos += a > 0;
  if (2 * pos != static_cast<long>(n)) return false;
  // signed discriminant must be a square: (-1)^{n/2} prod a_i; track squarefree parts
  std::map<long, int> parity;
  long sign = (n / 2) % 2 ? -1 : 1;
  std::set<long> primes = {2};
  for (long a : entries) {
    if (a < 0) sign = -sign;
    long x = std::labs(a);
    for (long p = 2; p <= x; ++p)
      while (x % p == 0) {
        parity[p] ^= 1;
        primes.insert(p);
        x /= p;
      }
  }
  if (sign < 0) return false;
  for (const auto& [p, odd] : parity)
    if (odd) return false;
  long k = static_cast<long>(n / 2);
  for (long p : primes) {
    int c = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) c *= hilbert(entries[i], entries[j], p);
    int want = (p == 2 && (k * (k - 1) / 2) % 2 == 1) ? -1 : 1;
    if (c != want) return false;
  }
  return true;
}

Rational cofactor_det(const std::vector<std::vector<Rational>>& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Rational det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Rational>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(row);
    }
    Rational term = m[0][c] * cofactor_det(minor);
    det += c % 2 ? -term : term;
  }
  return det;
}

bool same_square_class(const Rational& a, const Rational& b) {
  return squarefree_class(a) == squarefree_class(b);
}

}  // namespace

TEST_CASE("arithmetic helpers") {
  CHECK(radical(Integer(360)) == 30);
  CHECK(is_prime(Integer(1000003)));
  CHECK_FALSE(is_prime(Integer(1000001)));
  CHECK(legendre(Integer(2), Integer(7)) == 1);
  CHECK(legendre(Integer(3), Integer(7)) == -1);
  CHECK(squarefree_class(Rational(8, 9)) == 2);
  CHECK(squarefree_class(Rational(-12)) == -3);
  CHECK(to_string(Rational(-6, 4)) == "-3/2");
  auto f = factorize(Integer("1000000016000000063"));  // 1000000007 * 1000000009
  REQUIRE(f.size() == 2);
  CHECK(f.begin()->first == 1000000007);
}

TEST_CASE("field parsing") {
  CHECK(FieldSpec::parse("F_5") == FieldSpec::finite_prime(5));
  CHECK(FieldSpec::parse("GF(7)").name() == "F7");
  CHECK_THROWS_AS(FieldSpec::parse("F9"), Error);
  CHECK_THROWS_AS(FieldSpec::finite_prime(2), Error);
}

TEST_CASE("diagonalize examples") {
  CHECK(witt_class(diagonalize({{2, 0}, {0, 6}}, Q)) == cls(Q, {2, 6}));
  CHECK(witt_class(diagonalize({{0, 1}, {1, 0}}, Q)).is_zero());
  QForm d = diagonalize({{2, 0}, {0, 6}}, Q);
  CHECK(d.rank() == 2);
  CHECK(same_square_class(d.entries()[0] * d.entries()[1], 12));
  CHECK_THROWS_AS(diagonalize({{1, 1}, {1, 1}}, Q), Error);
}

TEST_CASE("diagonalize agrees with cofactor determinant and congruence invariance") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> small(-4, 4);
  int tested = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + trial % 4;
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) g[i][j] = g[j][i] = small(rng);
    Rational det = cofactor_det(g);
    if (det == 0) {
      CHECK_THROWS_AS(diagonalize(g, Q), Error);
      continue;
    }
    QForm d = diagonalize(g, Q);
    Rational prod = 1;
    for (const auto& x : d.entries()) prod *= x;
    CHECK(d.rank() == n);
    CHECK(same_square_class(prod, det));
    // congruent matrix P^T G P has the same class
    std::vector<std::vector<Rational>> p(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      p[i][i] = 1 + (small(rng) == 0);
      for (std::size_t j = i + 1; j < n; ++j) p[i][j] = small(rng);
    }
    std::vector<std::vector<Rational>> h(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) h[i][j] += p[a][i] * g[a][b] * p[b][j];
    CHECK(witt_class(diagonalize(h, Q)) == witt_class(d));
    ++tested;
  }
  CHECK(tested > 100);
}

TEST_CASE("witt_class examples") {
  CHECK(cls(Q, {1, -1}).is_zero());
  CHECK(cls(R, {1, 1, -1}).signature() == 1);
  WittClass c = cls(Q, {2, 6});
  CHECK(c.signature() == 2);
  CHECK(second_residue(c, 3) == WittClass::symbol(FieldSpec::finite_prime(3), 2));
  CHECK(c.residues().count(3) == 1);
}

TEST_CASE("addition and multiplication examples") {
  CHECK(WittClass::symbol(Q, 2) * WittClass::symbol(Q, 2) == WittClass::one(Q));
  CHECK((WittClass::symbol(Q, 2) + WittClass::symbol(Q, -2)).is_zero());
  FieldSpec f5 = FieldSpec::finite_prime(5);
  CHECK(WittClass::symbol(f5, 2) * WittClass::symbol(f5, 3) == WittClass::one(f5));
  // brute-force square classes of F_5: squares are {1, 4}
  for (long a = 1; a < 5; ++a)
    for (long b = 1; b < 5; ++b) {
      bool square = (a * b % 5 == 1) || (a * b % 5 == 4);
      CHECK((WittClass::symbol(f5, a) == WittClass::symbol(f5, b)) == square);
    }
}

TEST_CASE("trace form") {
  for (long d : {1L, -1L, 2L, 3L, 5L}) {
    WittClass t = trace_form(d, Q);
    CHECK(t == cls(Q, {2, 2 * d}));
    CHECK(t == WittClass::symbol(Q, 2) * (WittClass::one(Q) + WittClass::symbol(Q, d)));
  }
  CHECK(trace_form(-1, Q).is_zero());
  CHECK_THROWS_AS(trace_form(0, Q), Error);
}

TEST_CASE("second residue examples") {
  FieldSpec f3 = FieldSpec::finite_prime(3);
  CHECK(second_residue(WittClass::symbol(Q, 3), 3) == WittClass::one(f3));
  CHECK(second_residue(WittClass::symbol(Q, 2), 3).is_zero());
  for (long p : {3L, 5L, 7L, 11L}) CHECK(second_residue(cls(Q, {1, -1}), p).is_zero());
  CHECK_THROWS_AS(second_residue(WittClass::one(FieldSpec::finite_prime(5)), 3), Error);
}

TEST_CASE("Witt cancellation") {
  std::mt19937_64 rng(3);
  for (const auto& k : {Q, R, FieldSpec::finite_prime(3), FieldSpec::finite_prime(7), FieldSpec::quadratically_closed()}) {
    for (int i = 0; i < 200; ++i) {
      QForm q = checks::random_form(rng, k, 5);
      long a = std::uniform_int_distribution<long>(1, 40)(rng);
      if (k.kind() == FieldSpec::Kind::FinitePrime && a % k.prime() == 0) a = 1;
      CHECK(witt_class(q.direct_sum(form(k, {a, -a}))) == witt_class(q));
    }
  }
}

TEST_CASE("ring laws, 500 triples per field") {
  int seed = 100;
  for (const auto& k : {Q, R, FieldSpec::finite_prime(3), FieldSpec::finite_prime(5), FieldSpec::finite_prime(7),
                        FieldSpec::quadratically_closed()}) {
    auto r = checks::check_witt_laws(seed++, k, 500);
    INFO(r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("F_p closure over forms with entries in {1, n}") {
  for (long p : {3L, 5L, 7L}) {
    FieldSpec k = FieldSpec::finite_prime(p);
    long n = static_cast<long>(least_nonresidue(Integer(p)));
    std::set<std::string> classes;
    for (int rank = 0; rank <= 4; ++rank)
      for (int mask = 0; mask < (1 << rank); ++mask) {
        std::vector<long> e;
        for (int i = 0; i < rank; ++i) e.push_back(mask >> i & 1 ? n : 1);
        classes.insert(cls(k, e).to_string());
      }
    CHECK(classes.size() == 4);
    CHECK(enumerate_classes(k).size() == 4);
    auto full = checks::fp_closure(p);
    INFO(full.detail);
    CHECK(full.class_count == 4);
    CHECK(full.canonical_agrees);
    CHECK(full.addition_matches);
    CHECK(full.multiplication_matches);
  }
}

TEST_CASE("zero over Q iff signature and all residues vanish (Hilbert-symbol oracle)") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> entry(1, 50);
  std::uniform_int_distribution<int> coin(0, 1);
  int zeros = 0;
  for (int i = 0; i < 600; ++i) {
    std::vector<long> e;
    if (i % 3 == 0) {
      // <a,b> is isometric to <a+b, ab(a+b)>; differences give nontrivial zero classes
      long a = entry(rng) * (coin(rng) ? 1 : -1), b = entry(rng) * (coin(rng) ? 1 : -1);
      if (a + b == 0) b += 1;
      long c = a * b * (a + b);
      long sq = 1;
      for (long s = 2; s * s <= std::labs(c); ++s)
        if (c % (s * s) == 0) sq = s;
      e = {a, b, -(a + b), -c / (sq * sq)};
    } else if (i % 3 == 1) {
      std::size_t n = 1 + i % 3;
      for (std::size_t j = 0; j < n; ++j) e.push_back(entry(rng) * (coin(rng) ? 1 : -1));
      std::size_t m = e.size();
      for (std::size_t j = 0; j < m; ++j) e.push_back(-e[j] * (coin(rng) ? 4 : 9));
    } else {
      std::size_t n = 1 + i % 6;
      for (std::size_t j = 0; j < n; ++j) e.push_back(entry(rng) * (coin(rng) ? 1 : -1));
    }
    WittClass w = cls(Q, e);
    bool invariants_vanish = w.signature() == 0 && w.residues().empty() && !w.residue_at_two();
    bool oracle = hyperbolic_oracle(e);
    INFO("form " << form(Q, e).to_string());
    CHECK(w.is_zero() == invariants_vanish);
    CHECK(w.is_zero() == oracle);
    zeros += oracle;
  }
  CHECK(zeros > 150);
}

TEST_CASE("representative round trip and printing") {
  std::mt19937_64 rng(9);
  for (const auto& k : {Q, FieldSpec::finite_prime(5), FieldSpec::quadratically_closed(), R}) {
    for (int i = 0; i < 200; ++i) {
      WittClass w = checks::random_witt(rng, k);
      CHECK(witt_class(w.representative()) == w);
    }
  }
  CHECK(WittClass::zero(Q).to_string() == "0");
  CHECK(WittClass::integer(Q, 3).to_string() == "3");
  CHECK(cls(Q, {2, -1}).to_string() == "<-1,2>");
  CHECK(WittClass::one(FieldSpec::finite_prime(5)).to_string() == "1");
}

TEST_CASE("degenerate input") {
  CHECK_THROWS_AS(QForm(Q, {Rational(0)}), Error);
  CHECK_THROWS_AS(WittClass::symbol(Q, 0), Error);
  CHECK_THROWS_AS(QForm(FieldSpec::finite_prime(5), {Rational(10)}), Error);
}
