#include "bnloc_checks/checks.hpp"

#include "bnloc/errors.hpp"

#include <chrono>
#include <map>
#include <set>
#include <sstream>

namespace bnloc::checks {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string fail_detail(const std::string& what, const std::string& got, const std::string& want) {
  return what + ": got " + got + ", expected " + want;
}

}  // namespace

// ---------------------------------------------------------------- generators

QForm random_form(Rng& rng, const FieldSpec& field, int max_rank) {
  static const int kEntries[] = {1, -1, 2, -2, 3, -3, 5, -5, 6, 7, -10, 15};
  std::vector<Rational> entries;
  int rank = uniform(rng, 0, max_rank);
  for (int i = 0; i < rank; ++i) {
    int pick = kEntries[uniform(rng, 0, 11)];
    if (field.kind() == FieldSpec::Kind::FinitePrime && pick % field.prime() == 0) pick = 1;
    entries.emplace_back(pick);
  }
  return QForm(field, entries);
}

WittClass random_witt(Rng& rng, const FieldSpec& field) { return witt_class(random_form(rng, field)); }

BNElem random_bn(Rng& rng, const CoeffTheory& theory, const FieldSpec& field, int truncation) {
  std::vector<WittClass> coeffs;
  for (int i = 0; i < truncation; ++i)
    coeffs.push_back(uniform(rng, 0, 2) == 0 ? random_witt(rng, field) : WittClass::zero(field));
  WittClass c = uniform(rng, 0, 1) ? random_witt(rng, field) : WittClass::zero(field);
  return BNElem(theory, PowerSeries(field, truncation, coeffs), c);
}

LocalizedClass random_laurent(Rng& rng, const ContextPtr& ctx, int lo, int hi, TwistParity tag) {
  LaurentSeries s(ctx->field, ctx->inverted);
  for (int k = lo; k <= hi; ++k) {
    int n = uniform(rng, -3, 3);
    if (n != 0) s = s + LaurentSeries::monomial(LocalCoeff::rational(ctx->field, n, ctx->inverted), k);
  }
  return LocalizedClass(ctx, tag, s);
}

LocalizationProblem random_problem(Rng& rng) {
  LocalizationProblem p;
  p.truncation = 12;
  int count = uniform(rng, 1, 4);
  for (int i = 0; i < count; ++i) {
    FixedComponent c;
    c.id = "P" + std::to_string(i);
    c.kind = uniform(rng, 0, 3) == 0 ? ComponentKind::FreePair : ComponentKind::NFixed;
    int labels = uniform(rng, 1, 3);
    bool twisted = false;
    for (int j = 0; j < labels; ++j) {
      int m = uniform(rng, 1, 9);
      c.tangent_moving.push_back(RepLabel{m, true});
      if (m % 2 == 0) twisted = !twisted;
    }
    c.local_class.tag = twisted ? TwistParity::Twisted : TwistParity::Untwisted;
    c.local_class.terms.insert_or_assign(uniform(rng, 0, labels), WittFraction::rational(p.field, uniform(rng, 1, 4)));
    p.components.push_back(std::move(c));
  }
  return p;
}

// ---------------------------------------------------------------- rewriting oracle

BNElem rewrite_product(const BNElem& a, const BNElem& b) {
  const FieldSpec& k = a.field();
  int t = std::min(a.truncation(), b.truncation());
  using Monomial = std::pair<int, int>;  // (power of q0, power of e)
  auto expand = [&](const BNElem& x) {
    std::map<Monomial, WittClass> out;
    for (int i = 0; i < x.truncation(); ++i)
      if (!x.f()[i].is_zero()) out.emplace(Monomial{0, i}, x.f()[i]);
    if (!x.c().is_zero()) out.emplace(Monomial{1, 0}, x.c());
    return out;
  };
  std::map<Monomial, WittClass> terms;
  auto add = [&](Monomial m, const WittClass& c) {
    auto [it, fresh] = terms.emplace(m, c);
    if (!fresh) it->second = it->second + c;
  };
  for (const auto& [ma, ca] : expand(a))
    for (const auto& [mb, cb] : expand(b)) add({ma.first + mb.first, ma.second + mb.second}, ca * cb);

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = terms.begin(); it != terms.end(); ++it) {
      auto [q, e] = it->first;
      Monomial target;
      WittClass c = it->second;
      if (q >= 2) {
        target = {q - 2, e};
      } else if (q == 1 && e >= 1) {
        target = {0, e};
        c = -c;
      } else {
        continue;
      }
      terms.erase(it);
      add(target, c);
      changed = true;
      break;
    }
  }
  std::vector<WittClass> f(static_cast<std::size_t>(t), WittClass::zero(k));
  WittClass c = WittClass::zero(k);
  for (const auto& [m, coeff] : terms) {
    if (m.first == 1) c = c + coeff;
    else if (m.second < t) f[m.second] = f[m.second] + coeff;
  }
  return BNElem(a.theory(), PowerSeries(k, t, f), c);
}

// ---------------------------------------------------------------- F_p closure

namespace {

using Vec = std::vector<std::int64_t>;
using Gram = std::vector<Vec>;

struct ModP {
  std::int64_t p;
  std::int64_t norm(std::int64_t x) const { return ((x % p) + p) % p; }
  std::int64_t inv(std::int64_t x) const {
    std::int64_t r = 1, b = norm(x), e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }
  bool is_square(std::int64_t x) const {
    x = norm(x);
    for (std::int64_t y = 1; y < p; ++y)
      if (y * y % p == x) return true;
    return false;
  }
};

std::int64_t bilinear(const Gram& g, const Vec& u, const Vec& v, const ModP& f) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) s = f.norm(s + u[i] * g[i][j] % f.p * v[j]);
  return s;
}

std::optional<Vec> isotropic_vector(const Gram& g, const ModP& f) {
  std::size_t n = g.size();
  Vec v(n, 0);
  while (true) {
    std::size_t i = 0;
    while (i < n && ++v[i] == f.p) v[i++] = 0;
    if (i == n) return std::nullopt;
    if (bilinear(g, v, v, f) == 0) return v;
  }
}

/// Basis of {x : B(x, v) = B(x, w) = 0} by Gaussian elimination.
std::vector<Vec> complement(const Gram& g, const Vec& v, const Vec& w, const ModP& f) {
  std::size_t n = g.size();
  std::vector<Vec> rows(2, Vec(n, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      rows[0][j] = f.norm(rows[0][j] + v[i] * g[i][j]);
      rows[1][j] = f.norm(rows[1][j] + w[i] * g[i][j]);
    }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < 2; ++c) {
    std::size_t piv = r;
    while (piv < 2 && rows[piv][c] == 0) ++piv;
    if (piv == 2) continue;
    std::swap(rows[piv], rows[r]);
    std::int64_t s = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = x * s % f.p;
    for (std::size_t o = 0; o < 2; ++o)
      if (o != r && rows[o][c] != 0) {
        std::int64_t m = rows[o][c];
        for (std::size_t j = 0; j < n; ++j) rows[o][j] = f.norm(rows[o][j] - m * rows[r][j]);
      }
    pivots.push_back(c);
    ++r;
  }
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < n; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) != pivots.end()) continue;
    Vec x(n, 0);
    x[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = f.norm(-rows[i][c]);
    basis.push_back(x);
  }
  return basis;
}

std::int64_t determinant(Gram g, const ModP& f) {
  std::int64_t det = 1;
  std::size_t n = g.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && g[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(g[piv], g[c]);
      det = f.norm(-det);
    }
    det = det * g[c][c] % f.p;
    std::int64_t inv = f.inv(g[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      std::int64_t m = g[r][c] * inv % f.p;
      for (std::size_t j = c; j < n; ++j) g[r][j] = f.norm(g[r][j] - m * g[c][j]);
    }
  }
  return det;
}

/// (rank, determinant is a square) of the anisotropic kernel.
std::pair<int, bool> kernel_key(Gram g, const ModP& f) {
  while (auto v = isotropic_vector(g, f)) {
    Vec w(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::fill(w.begin(), w.end(), 0);
      w[i] = 1;
      if (bilinear(g, *v, w, f) != 0) break;
    }
    auto basis = complement(g, *v, w, f);
    Gram h(basis.size(), Vec(basis.size(), 0));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) h[i][j] = bilinear(g, basis[i], basis[j], f);
    g = h;
  }
  if (g.empty()) return {0, true};
  return {static_cast<int>(g.size()), f.is_square(determinant(g, f))};
}

Gram diagonal(const std::vector<std::int64_t>& entries) {
  Gram g(entries.size(), Vec(entries.size(), 0));
  for (std::size_t i = 0; i < entries.size(); ++i) g[i][i] = entries[i];
  return g;
}

QForm to_qform(const std::vector<std::int64_t>& entries, const FieldSpec& field) {
  std::vector<Rational> r(entries.begin(), entries.end());
  return QForm(field, r);
}

}  // namespace

FpClosure fp_closure(std::int64_t p) {
  FieldSpec field = FieldSpec::finite_prime(p);
  ModP f{p};
  FpClosure out;
  std::map<std::pair<int, bool>, std::vector<std::int64_t>> reps;
  std::map<std::pair<int, bool>, WittClass> canonical;
  bool agrees = true;
  std::ostringstream detail;

  std::vector<std::vector<std::int64_t>> forms = {{}};
  for (int rank = 1; rank <= 4; ++rank) {
    std::vector<std::int64_t> e(static_cast<std::size_t>(rank), 1);
    while (true) {
      forms.push_back(e);
      std::size_t i = 0;
      while (i < e.size() && ++e[i] == p) e[i++] = 1;
      if (i == e.size()) break;
    }
  }
  for (const auto& form : forms) {
    auto key = kernel_key(diagonal(form), f);
    WittClass c = witt_class(to_qform(form, field));
    auto [it, fresh] = canonical.emplace(key, c);
    if (fresh) {
      reps.emplace(key, form);
    } else if (!(it->second == c)) {
      if (agrees) detail << "form " << to_qform(form, field).to_string() << " disagrees; ";
      agrees = false;
    }
  }
  out.class_count = static_cast<int>(canonical.size());
  std::set<std::string> distinct;
  for (const auto& [key, c] : canonical) distinct.insert(c.to_string());
  if (distinct.size() != canonical.size()) {
    agrees = false;
    detail << "distinct kernels share a canonical class; ";
  }
  out.canonical_agrees = agrees;

  out.addition_matches = out.multiplication_matches = true;
  for (const auto& [ka, ra] : reps)
    for (const auto& [kb, rb] : reps) {
      std::vector<std::int64_t> sum = ra;
      sum.insert(sum.end(), rb.begin(), rb.end());
      std::vector<std::int64_t> prod;
      for (auto x : ra)
        for (auto y : rb) prod.push_back(x * y % p);
      auto ks = kernel_key(diagonal(sum), f);
      auto kp = kernel_key(diagonal(prod), f);
      if (!(canonical.at(ks) == canonical.at(ka) + canonical.at(kb))) {
        out.addition_matches = false;
        detail << "sum " << canonical.at(ka).to_string() << " + " << canonical.at(kb).to_string() << "; ";
      }
      if (!(canonical.at(kp) == canonical.at(ka) * canonical.at(kb))) {
        out.multiplication_matches = false;
        detail << "product " << canonical.at(ka).to_string() << " * " << canonical.at(kb).to_string() << "; ";
      }
    }
  out.detail = detail.str();
  return out;
}

// ---------------------------------------------------------------- suites

CheckResult check_relations() {
  CheckResult r{"ring relations", true, ""};
  FieldSpec q = FieldSpec::rationals();
  const int t = 16;
  for (const auto& theory : {CoeffTheory::hw(), CoeffTheory::kw()}) {
    BNElem one = BNElem::integer(theory, q, 1, t);
    BNElem q0 = BNElem::q0(theory, q, t);
    BNElem e = BNElem::e(theory, q, t);
    BNElem zero = BNElem::integer(theory, q, 0, t);
    TwistedElem et = TwistedElem::etilde(theory, q, t);
    TwistedElem q1 = TwistedElem::q1(theory, q, t);
    TwistedElem tzero(theory, PowerSeries(q, t), WittClass::zero(q));
    auto expect = [&](bool ok, const std::string& what) {
      if (!ok) {
        r.passed = false;
        r.detail += theory.name() + ": " + what + "; ";
      }
    };
    expect(bn_mul(q0, q0) == one, "q0^2 != 1");
    expect(bn_mul(one + q0, e) == zero, "(1+q0)e != 0");
    expect(twisted_scalar(one + q0, et) == tzero, "(1+q0)et != 0");
    expect(twisted_scalar(one + q0, q1) == tzero, "(1+q0)q1 != 0");
  }
  if (r.passed) r.detail = "q0^2 = 1, (1+q0)e = (1+q0)et = (1+q0)q1 = 0 in HW and KW";
  return r;
}

CheckResult check_rewriting(std::uint64_t seed, int pairs, int truncation) {
  Rng rng(seed);
  auto start = std::chrono::steady_clock::now();
  int mismatches = 0;
  std::string first;
  for (int i = 0; i < pairs; ++i) {
    FieldSpec field = i % 3 == 0 ? FieldSpec::finite_prime(i % 2 ? 3 : 5) : FieldSpec::rationals();
    BNElem a = random_bn(rng, CoeffTheory::hw(), field, truncation);
    BNElem b = random_bn(rng, CoeffTheory::hw(), field, truncation);
    BNElem got = bn_mul(a, b);
    BNElem want = rewrite_product(a, b);
    if (!(got == want)) {
      if (mismatches++ == 0) first = fail_detail("(" + a.to_string() + ")*(" + b.to_string() + ")", got.to_string(), want.to_string());
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << pairs << " pairs at T=" << truncation << ", " << mismatches << " mismatches, " << secs << " s";
  if (!first.empty()) d << "; first: " << first;
  return {"rewriting oracle", mismatches == 0 && secs < 5.0, d.str()};
}

CheckResult check_fp_closure(std::int64_t p) {
  FpClosure c = fp_closure(p);
  bool ok = c.class_count == 4 && c.canonical_agrees && c.addition_matches && c.multiplication_matches;
  std::ostringstream d;
  d << c.class_count << " classes, canonical " << (c.canonical_agrees ? "agrees" : "disagrees") << ", addition "
    << (c.addition_matches ? "matches" : "differs") << ", multiplication "
    << (c.multiplication_matches ? "matches" : "differs");
  if (!c.detail.empty()) d << "; " << c.detail;
  return {"W(F_" + std::to_string(p) + ") closure", ok, d.str()};
}

CheckResult check_witt_laws(std::uint64_t seed, const FieldSpec& field, int samples) {
  Rng rng(seed);
  int bad = 0;
  std::string first;
  for (int i = 0; i < samples; ++i) {
    QForm fa = random_form(rng, field), fb = random_form(rng, field), fc = random_form(rng, field);
    WittClass a = witt_class(fa), b = witt_class(fb), c = witt_class(fc);
    WittClass zero = WittClass::zero(field), one = WittClass::one(field);
    std::vector<std::pair<bool, const char*>> laws = {
        {a + b == b + a, "a+b=b+a"},
        {(a + b) + c == a + (b + c), "associativity of +"},
        {a * b == b * a, "ab=ba"},
        {(a * b) * c == a * (b * c), "associativity of *"},
        {a * (b + c) == a * b + a * c, "distributivity"},
        {a + (-a) == zero, "a-a=0"},
        {a * one == a, "a*1=a"},
        {witt_class(fa.direct_sum(fb)) == a + b, "class of a direct sum"},
        {witt_class(fa.tensor(fb)) == a * b, "class of a tensor product"},
        {witt_class(fa.direct_sum(fa.negated())) == zero, "a + (-a) hyperbolic"},
        {witt_class(a.representative()) == a, "representative round trip"},
    };
    for (const auto& [ok, name] : laws)
      if (!ok && bad++ == 0) first = std::string(name) + " for " + fa.to_string() + ", " + fb.to_string() + ", " + fc.to_string();
  }
  std::string d = std::to_string(samples) + " triples over " + field.name() + ", " + std::to_string(bad) + " failures";
  if (!first.empty()) d += "; first: " + first;
  return {"Witt ring laws over " + field.name(), bad == 0, d};
}

CheckResult check_key_lemma(int m, const Integer& inverted, int truncation) {
  std::string name = "Key Lemma m=" + std::to_string(m) + " in W[1/" + to_string(inverted) + "]";
  FieldSpec q = FieldSpec::rationals();
  EulerTable table = EulerTable::builtin(CoeffTheory::hw(), q);
  try {
    ContextPtr ctx = table_context(table, inverted, truncation);
    LocalizedClass x = localized_euler(RepLabel{m, true}, table, ctx);
    LocalizedClass product = x * x.inverse();
    bool ok = product.equals(LocalizedClass::one(ctx)) && product.tag() == TwistParity::Untwisted;
    std::string prec = product.precision() ? std::to_string(*product.precision()) : std::string("exact");
    return {name, ok, (prec == "exact" ? std::string("class * inverse is exact") : "class * inverse known below e^" + prec) + (ok ? ", equals 1" : ", differs from 1")};
  } catch (const Error& e) {
    return {name, false, std::string(error_name(e.code())) + ": " + e.what()};
  }
}

CheckResult check_even_square(int n) {
  FieldSpec q = FieldSpec::rationals();
  EulerTable table = EulerTable::builtin(CoeffTheory::hw(), q);
  ContextPtr ctx = table_context(table, 2 * n, 16);
  LocalizedClass x = localized_euler(RepLabel{2 * n, true}, table, ctx);
  LocalizedClass sq = x * x;
  LocalizedClass want =
      LocalizedClass::monomial(ctx, LocalCoeff::rational(q, Rational(-4 * n * n), ctx->inverted), 1);
  bool ok = sq.equals(want) && !sq.precision();
  return {"even square m=" + std::to_string(2 * n), ok,
          fail_detail("square", class_text(sq), class_text(want))};
}

CheckResult check_finite_level(int m, int max_exponent) {
  FieldSpec q = FieldSpec::rationals();
  int t = max_exponent + 1;
  bool ok = true;
  std::string d;
  for (int i = 0; i <= max_exponent; ++i) {
    BNElem mono(CoeffTheory::hw(), PowerSeries::monomial(WittClass::one(q), i, t), WittClass::zero(q));
    bool killed = finite_level(mono, m).is_zero();
    if (killed != (i >= m - 1)) {
      ok = false;
      d += "e^" + std::to_string(i) + (killed ? " killed; " : " survives; ");
    }
  }
  BNElem q0 = BNElem::q0(CoeffTheory::hw(), q, t);
  if (!(finite_level(q0, m) == q0)) {
    ok = false;
    d += "q0 not fixed; ";
  }
  if (ok) d = "kernel spanned by e^" + std::to_string(m - 1) + "..e^" + std::to_string(max_exponent);
  return {"finite level m=" + std::to_string(m), ok, d};
}

CheckResult check_bott_round_trip(std::uint64_t seed, int problems) {
  Rng rng(seed);
  int bad = 0;
  std::string first;
  for (int i = 0; i < problems; ++i) {
    LocalizationProblem p = random_problem(rng);
    EulerTable table = EulerTable::builtin(p.theory, p.field);
    ContextPtr ctx = table_context(table, problem_localizing_integer(p), p.truncation);
    std::map<std::string, LocalizedClass> restrictions;
    for (const auto& c : p.components) {
      TwistParity tag = uniform(rng, 0, 1) ? TwistParity::Twisted : TwistParity::Untwisted;
      restrictions.emplace(c.id, random_laurent(rng, ctx, -2, 3, tag));
    }
    try {
      auto inv = bott_inverse(restrictions, p, table);
      for (const auto& c : p.components) {
        LocalizedClass back = self_intersection(inv.at(c.id), normal_labels(c), table);
        if (!back.equals(restrictions.at(c.id)) && bad++ == 0)
          first = "problem " + std::to_string(i) + " component " + c.id;
      }
    } catch (const Error& e) {
      if (bad++ == 0) first = "problem " + std::to_string(i) + ": " + e.what();
    }
  }
  std::string d = std::to_string(problems) + " random problems, " + std::to_string(bad) + " failures";
  if (!first.empty()) d += "; first: " + first;
  return {"Bott round trip", bad == 0, d};
}

std::string class_text(const LocalizedClass& x) {
  std::string s;
  for (const auto& [k, c] : x.series().terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")e^" + std::to_string(k);
  }
  if (s.empty()) s = "0";
  if (x.tag() == TwistParity::Twisted) s = "[" + s + "]*et";
  if (x.precision()) s += " + O(e^" + std::to_string(*x.precision()) + ")";
  return s;
}

std::vector<CheckResult> run_selfcheck(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(check_relations());
  out.push_back(check_rewriting(seed, 200, 8));
  for (int p : {3, 5, 7}) out.push_back(check_fp_closure(p));
  out.push_back(check_witt_laws(seed + 1, FieldSpec::rationals(), 200));
  out.push_back(check_witt_laws(seed + 2, FieldSpec::finite_prime(5), 200));
  out.push_back(check_witt_laws(seed + 3, FieldSpec::finite_prime(7), 200));
  for (int m = 1; m <= 15; m += 2) out.push_back(check_key_lemma(m, m, 16));
  for (int n = 1; n <= 7; ++n) {
    out.push_back(check_key_lemma(2 * n, radical(Integer(2 * n)), 16));
    out.push_back(check_even_square(n));
  }
  for (int m : {3, 5, 7}) out.push_back(check_finite_level(m, 10));
  out.push_back(check_bott_round_trip(seed + 4, 50));
  return out;
}

}  // namespace bnloc::checks
