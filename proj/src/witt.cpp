#include "bnloc/witt.hpp"

#include "bnloc/errors.hpp"

#include <algorithm>
#include <limits>
#include <mutex>

namespace bnloc {

namespace mp = boost::multiprecision;

ResidueClass residue_add(ResidueClass a, ResidueClass b, bool minus_one_nonsquare) {
  // d(A + B) = (-1)^{rank A * rank B} d(A) d(B)
  return {a.odd_rank != b.odd_rank,
          (a.nonsquare != b.nonsquare) != (a.odd_rank && b.odd_rank && minus_one_nonsquare)};
}

ResidueClass residue_neg(ResidueClass a, bool minus_one_nonsquare) {
  return {a.odd_rank, a.nonsquare != (a.odd_rank && minus_one_nonsquare)};
}

ResidueClass residue_mul(ResidueClass a, ResidueClass b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.odd_rank && b.odd_rank) return {true, a.nonsquare != b.nonsquare};
  if (a.odd_rank || b.odd_rank) return {false, true};
  return {};
}

namespace {

bool minus_one_nonsquare(const Integer& p) { return p % 4 == 3; }

ResidueClass residue_times(ResidueClass a, const Integer& k, bool eps) {
  int m = static_cast<int>(mod_floor(k, 4));
  ResidueClass out{};
  for (int i = 0; i < m; ++i) out = residue_add(out, a, eps);
  return out;
}

int sign_of(const Rational& r) { return r < 0 ? -1 : 1; }

/// Class of the unit part a0 in a = a0 + p*a1 over Q_p, read off canonical data.
ResidueClass first_residue(const WittClass& a, const Integer& p) {
  auto it = a.residues().find(p);
  ResidueClass n1 = it == a.residues().end() ? ResidueClass{} : it->second;
  const Integer& s = a.signature();
  bool n0 = (s % 2 != 0) != n1.odd_rank;
  Integer abs_s = mp::abs(s);
  Integer sign_exp = abs_s * (abs_s - 1) / 2 + (abs_s - s) / 2;
  // unit part at p of the signed discriminant of a
  Integer u = sign_exp % 2 == 0 ? 1 : -1;
  for (const auto& [q, r] : a.residues()) {
    if (q != p && r.odd_rank) u = (u * q) % p;
  }
  if (a.residue_at_two()) u = (u * 2) % p;
  bool u_nonsquare = legendre(u, p) == -1;
  bool s0 = u_nonsquare != n1.nonsquare;
  if (n0 && n1.odd_rank && minus_one_nonsquare(p)) s0 = !s0;
  return {n0, s0};
}

}  // namespace

// ---------------------------------------------------------------- QForm

QForm::QForm(FieldSpec field, std::vector<Rational> entries) : field_(field), entries_(std::move(entries)) {
  for (auto& a : entries_) {
    if (a == 0) fail(ErrorCode::DegenerateForm, "zero diagonal entry");
    if (field_.kind() == FieldSpec::Kind::FinitePrime) a = Rational(field_.residue(a));
  }
}

QForm QForm::direct_sum(const QForm& other) const {
  require_same_field(field_, other.field_);
  std::vector<Rational> out = entries_;
  out.insert(out.end(), other.entries_.begin(), other.entries_.end());
  return QForm(field_, std::move(out));
}

QForm QForm::tensor(const QForm& other) const {
  require_same_field(field_, other.field_);
  std::vector<Rational> out;
  out.reserve(entries_.size() * other.entries_.size());
  for (const auto& a : entries_)
    for (const auto& b : other.entries_) out.push_back(a * b);
  return QForm(field_, std::move(out));
}

QForm QForm::negated() const {
  std::vector<Rational> out;
  for (const auto& a : entries_) out.push_back(-a);
  return QForm(field_, std::move(out));
}

std::string QForm::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += bnloc::to_string(entries_[i]);
  }
  return out + ">";
}

// ---------------------------------------------------------------- WittClass

WittClass WittClass::zero(const FieldSpec& field) { return WittClass(field); }

Integer squarefree_class(const Rational& u) {
  if (u == 0) fail(ErrorCode::ZeroElement, "zero has no square class");
  Integer n = mp::numerator(u) * mp::denominator(u);
  Integer out = n < 0 ? -1 : 1;
  for (const auto& [q, e] : factorize(n)) {
    if (e % 2) out *= q;
  }
  return out;
}

WittClass WittClass::symbol(const FieldSpec& field, const Rational& u) {
  if (u == 0) fail(ErrorCode::ZeroElement, "symbol of zero");
  WittClass w(field);
  switch (field.kind()) {
    case FieldSpec::Kind::Rationals: {
      w.signature_ = sign_of(u);
      Integer s = squarefree_class(u);
      for (const auto& [q, e] : factorize(s)) {
        if (q == 2) {
          w.two_ = true;
        } else {
          w.residues_[q] = {true, legendre(s / q, q) == -1};
        }
      }
      break;
    }
    case FieldSpec::Kind::Reals:
      w.signature_ = sign_of(u);
      break;
    case FieldSpec::Kind::FinitePrime:
      w.fp_ = {true, legendre(field.residue(u), Integer(field.prime())) == -1};
      break;
    case FieldSpec::Kind::QuadraticallyClosed:
      w.fp_ = {true, false};
      break;
  }
  return w;
}

WittClass WittClass::from_residue(const FieldSpec& field, ResidueClass r) {
  if (field.kind() != FieldSpec::Kind::FinitePrime)
    fail(ErrorCode::WrongField, "residue classes live over F_p, not " + field.name());
  WittClass w(field);
  w.fp_ = r;
  return w;
}

bool WittClass::rank_parity() const {
  if (field_.ordered()) return signature_ % 2 != 0;
  return fp_.odd_rank;
}

bool WittClass::is_zero() const { return *this == WittClass(field_); }

WittClass WittClass::torsion_part() const {
  if (!field_.ordered()) return *this;
  return *this - WittClass::integer(field_, signature_);
}

WittClass WittClass::operator+(const WittClass& other) const {
  require_same_field(field_, other.field_);
  WittClass out(field_);
  switch (field_.kind()) {
    case FieldSpec::Kind::Rationals: {
      out.signature_ = signature_ + other.signature_;
      out.two_ = two_ != other.two_;
      out.residues_ = residues_;
      for (const auto& [q, r] : other.residues_) {
        ResidueClass sum = residue_add(out.residues_[q], r, minus_one_nonsquare(q));
        if (sum.is_zero())
          out.residues_.erase(q);
        else
          out.residues_[q] = sum;
      }
      break;
    }
    case FieldSpec::Kind::Reals:
      out.signature_ = signature_ + other.signature_;
      break;
    case FieldSpec::Kind::FinitePrime:
      out.fp_ = residue_add(fp_, other.fp_, field_.prime() % 4 == 3);
      break;
    case FieldSpec::Kind::QuadraticallyClosed:
      out.fp_.odd_rank = fp_.odd_rank != other.fp_.odd_rank;
      break;
  }
  return out;
}

WittClass WittClass::operator-() const {
  WittClass out(field_);
  switch (field_.kind()) {
    case FieldSpec::Kind::Rationals:
      out.signature_ = -signature_;
      out.two_ = two_;
      for (const auto& [q, r] : residues_) out.residues_[q] = residue_neg(r, minus_one_nonsquare(q));
      break;
    case FieldSpec::Kind::Reals:
      out.signature_ = -signature_;
      break;
    case FieldSpec::Kind::FinitePrime:
      out.fp_ = residue_neg(fp_, field_.prime() % 4 == 3);
      break;
    case FieldSpec::Kind::QuadraticallyClosed:
      out.fp_ = fp_;
      break;
  }
  return out;
}

WittClass WittClass::operator*(const WittClass& other) const {
  require_same_field(field_, other.field_);
  WittClass out(field_);
  switch (field_.kind()) {
    case FieldSpec::Kind::Rationals: {
      out.signature_ = signature_ * other.signature_;
      bool ra = rank_parity(), rb = other.rank_parity();
      out.two_ = (ra && other.two_) != (two_ && rb);
      std::vector<Integer> primes;
      for (const auto& kv : residues_) primes.push_back(kv.first);
      for (const auto& kv : other.residues_) primes.push_back(kv.first);
      std::sort(primes.begin(), primes.end());
      primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
      for (const auto& p : primes) {
        auto da = residues_.count(p) ? residues_.at(p) : ResidueClass{};
        auto db = other.residues_.count(p) ? other.residues_.at(p) : ResidueClass{};
        ResidueClass r = residue_add(residue_mul(first_residue(*this, p), db),
                                     residue_mul(da, first_residue(other, p)), minus_one_nonsquare(p));
        if (!r.is_zero()) out.residues_[p] = r;
      }
      break;
    }
    case FieldSpec::Kind::Reals:
      out.signature_ = signature_ * other.signature_;
      break;
    case FieldSpec::Kind::FinitePrime:
      out.fp_ = residue_mul(fp_, other.fp_);
      break;
    case FieldSpec::Kind::QuadraticallyClosed:
      out.fp_.odd_rank = fp_.odd_rank && other.fp_.odd_rank;
      break;
  }
  return out;
}

WittClass WittClass::times(const Integer& k) const {
  WittClass out(field_);
  switch (field_.kind()) {
    case FieldSpec::Kind::Rationals:
      out.signature_ = signature_ * k;
      out.two_ = two_ && (k % 2 != 0);
      for (const auto& [q, r] : residues_) {
        ResidueClass m = residue_times(r, k, minus_one_nonsquare(q));
        if (!m.is_zero()) out.residues_[q] = m;
      }
      break;
    case FieldSpec::Kind::Reals:
      out.signature_ = signature_ * k;
      break;
    case FieldSpec::Kind::FinitePrime:
      out.fp_ = residue_times(fp_, k, field_.prime() % 4 == 3);
      break;
    case FieldSpec::Kind::QuadraticallyClosed:
      out.fp_.odd_rank = fp_.odd_rank && (k % 2 != 0);
      break;
  }
  return out;
}

// ---------------------------------------------------------------- representatives

namespace {

/// Squarefree integer entries of a form over Q with sig 0, residue r at the odd
/// prime p and no other residues (including at 2).
std::vector<Integer> odd_prime_section(const Integer& p, ResidueClass r);

void cancel_hyperbolic_pairs(std::vector<Integer>& entries) {
  std::sort(entries.begin(), entries.end());
  std::vector<Integer> kept;
  std::vector<bool> used(entries.size(), false);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (used[i]) continue;
    bool paired = false;
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (!used[j] && entries[j] == -entries[i]) {
        used[j] = true;
        paired = true;
        break;
      }
    }
    if (!paired) kept.push_back(entries[i]);
    used[i] = true;
  }
  entries = std::move(kept);
}

WittClass class_of(const std::vector<Integer>& entries) {
  FieldSpec q = FieldSpec::rationals();
  WittClass w = WittClass::zero(q);
  for (const auto& a : entries) w = w + WittClass::symbol(q, Rational(a));
  return w;
}

std::vector<Integer> negate(std::vector<Integer> v) {
  for (auto& a : v) a = -a;
  return v;
}

/// Adds entries cancelling every odd residue other than at `keep`, then the 2-residue.
void clear_other_residues(std::vector<Integer>& entries, WittClass current, const Integer& keep) {
  for (;;) {
    const Integer* target = nullptr;
    for (const auto& [q, r] : current.residues()) {
      if (q != keep) target = &q;
    }
    if (!target) break;
    Integer q = *target;
    ResidueClass r = current.residues().at(q);
    auto fix = negate(odd_prime_section(q, r));
    entries.insert(entries.end(), fix.begin(), fix.end());
    current = current + class_of(fix);
  }
  if (current.residue_at_two()) {
    entries.push_back(2);
    entries.push_back(-1);
  }
}

std::vector<Integer> odd_prime_section(const Integer& p, ResidueClass r) {
  static std::mutex mutex;
  static std::map<std::pair<Integer, int>, std::vector<Integer>> cache;
  int code = (r.odd_rank ? 1 : 0) + (r.nonsquare ? 2 : 0);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({p, code});
    if (it != cache.end()) return it->second;
  }
  std::vector<Integer> units;
  Integer n = least_nonresidue(p);
  if (r.odd_rank)
    units.push_back(r.nonsquare ? n : Integer(1));
  else if (r.nonsquare)
    units = {1, p - n};
  std::vector<Integer> entries;
  for (const auto& u : units) {
    entries.push_back(squarefree_class(Rational(p * u)));
    entries.push_back(-1);
  }
  clear_other_residues(entries, class_of(entries), p);
  cancel_hyperbolic_pairs(entries);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(std::make_pair(p, code), entries);
  return entries;
}

}  // namespace

QForm WittClass::representative() const {
  std::vector<Rational> out;
  switch (field_.kind()) {
    case FieldSpec::Kind::Rationals: {
      std::vector<Integer> entries;
      Integer k = mp::abs(signature_);
      for (Integer i = 0; i < k; ++i) entries.push_back(signature_ > 0 ? 1 : -1);
      for (const auto& [p, r] : residues_) {
        auto sec = odd_prime_section(p, r);
        entries.insert(entries.end(), sec.begin(), sec.end());
      }
      if (two_) {
        entries.push_back(2);
        entries.push_back(-1);
      }
      cancel_hyperbolic_pairs(entries);
      for (const auto& a : entries) out.emplace_back(a);
      break;
    }
    case FieldSpec::Kind::Reals: {
      Integer k = mp::abs(signature_);
      for (Integer i = 0; i < k; ++i) out.emplace_back(signature_ > 0 ? 1 : -1);
      break;
    }
    case FieldSpec::Kind::FinitePrime: {
      Integer p(field_.prime());
      Integer n = least_nonresidue(p);
      if (fp_.odd_rank)
        out.emplace_back(fp_.nonsquare ? n : Integer(1));
      else if (fp_.nonsquare)
        out = {Rational(1), Rational(p - n)};
      break;
    }
    case FieldSpec::Kind::QuadraticallyClosed:
      if (fp_.odd_rank) out.emplace_back(1);
      break;
  }
  return QForm(field_, std::move(out));
}

std::string WittClass::to_string() const {
  if (is_zero()) return "0";
  if (field_.ordered()) {
    WittClass t = torsion_part();
    if (t.is_zero()) return bnloc::to_string(signature_);
    std::string tail = t.representative().to_string();
    if (signature_ == 0) return tail;
    return bnloc::to_string(signature_) + "+" + tail;
  }
  if (*this == WittClass::one(field_)) return "1";
  return representative().to_string();
}

// ---------------------------------------------------------------- free functions

WittClass witt_class(const QForm& form) {
  WittClass w = WittClass::zero(form.field());
  for (const auto& a : form.entries()) w = w + WittClass::symbol(form.field(), a);
  return w;
}

namespace {

template <class T, class Ops>
std::vector<T> symmetric_elimination(std::vector<std::vector<T>> a, const Ops& ops) {
  const std::size_t n = a.size();
  std::vector<T> diag;
  for (std::size_t i = 0; i < n; ++i) {
    if (ops.is_zero(a[i][i])) {
      std::size_t swap = n;
      for (std::size_t j = i + 1; j < n && swap == n; ++j)
        if (!ops.is_zero(a[j][j])) swap = j;
      if (swap != n) {
        std::swap(a[i], a[swap]);
        for (auto& row : a) std::swap(row[i], row[swap]);
      } else {
        std::size_t partner = n;
        for (std::size_t j = i + 1; j < n && partner == n; ++j)
          if (!ops.is_zero(a[i][j])) partner = j;
        if (partner == n) fail(ErrorCode::DegenerateForm, "Gram matrix is degenerate");
        // replace basis vector i by v_i + v_partner; the new diagonal entry is 2 a_ij != 0
        for (std::size_t k = 0; k < n; ++k) a[i][k] = ops.add(a[i][k], a[partner][k]);
        for (std::size_t k = 0; k < n; ++k) a[k][i] = ops.add(a[k][i], a[k][partner]);
      }
    }
    const T pivot = a[i][i];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ops.is_zero(a[j][i])) continue;
      T factor = ops.div(a[j][i], pivot);
      for (std::size_t k = i; k < n; ++k) a[j][k] = ops.sub(a[j][k], ops.mul(factor, a[i][k]));
      for (std::size_t k = i; k < n; ++k) a[k][j] = ops.sub(a[k][j], ops.mul(factor, a[k][i]));
    }
    diag.push_back(pivot);
  }
  return diag;
}

struct RationalOps {
  static Rational add(const Rational& a, const Rational& b) { return a + b; }
  static Rational sub(const Rational& a, const Rational& b) { return a - b; }
  static Rational mul(const Rational& a, const Rational& b) { return a * b; }
  static Rational div(const Rational& a, const Rational& b) { return a / b; }
  static bool is_zero(const Rational& a) { return a == 0; }
};

struct ModOps {
  Integer p;
  Integer add(const Integer& a, const Integer& b) const { return mod_floor(a + b, p); }
  Integer sub(const Integer& a, const Integer& b) const { return mod_floor(a - b, p); }
  Integer mul(const Integer& a, const Integer& b) const { return mod_floor(a * b, p); }
  Integer div(const Integer& a, const Integer& b) const { return mod_floor(a * Integer(mp::powm(b, Integer(p - 2), p)), p); }
  static bool is_zero(const Integer& a) { return a == 0; }
};

}  // namespace

QForm diagonalize(const std::vector<std::vector<Rational>>& gram, const FieldSpec& field) {
  const std::size_t n = gram.size();
  for (const auto& row : gram)
    if (row.size() != n) fail(ErrorCode::InvalidArgument, "Gram matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram[i][j] != gram[j][i]) fail(ErrorCode::InvalidArgument, "Gram matrix is not symmetric");

  if (field.kind() == FieldSpec::Kind::FinitePrime) {
    ModOps ops{Integer(field.prime())};
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (mp::denominator(gram[i][j]) % ops.p == 0)
          fail(ErrorCode::InvalidArgument, "entry not defined in " + field.name());
        a[i][j] = gram[i][j] == 0 ? Integer(0) : ops.div(mod_floor(mp::numerator(gram[i][j]), ops.p),
                                                         mod_floor(mp::denominator(gram[i][j]), ops.p));
      }
    std::vector<Rational> out;
    for (const auto& d : symmetric_elimination(a, ops)) out.emplace_back(d);
    return QForm(field, std::move(out));
  }
  return QForm(field, symmetric_elimination(gram, RationalOps{}));
}

WittClass trace_form(const Rational& d, const FieldSpec& field) {
  if (d == 0) fail(ErrorCode::ZeroElement, "trace form of a zero element");
  return witt_class(QForm(field, {Rational(2), 2 * d}));
}

WittClass second_residue(const WittClass& a, const Integer& p) {
  if (a.field().kind() != FieldSpec::Kind::Rationals)
    fail(ErrorCode::WrongField, "second residues are defined over Q, not " + a.field().name());
  if (p < 3 || !is_prime(p)) fail(ErrorCode::InvalidArgument, "second residue needs an odd prime");
  if (p > Integer(std::numeric_limits<std::int64_t>::max()))
    fail(ErrorCode::Unsupported, "prime too large for F_p");
  FieldSpec fp = FieldSpec::finite_prime(static_cast<std::int64_t>(p));
  auto it = a.residues().find(p);
  return WittClass::from_residue(fp, it == a.residues().end() ? ResidueClass{} : it->second);
}

std::vector<WittClass> enumerate_classes(const FieldSpec& field) {
  switch (field.kind()) {
    case FieldSpec::Kind::FinitePrime: {
      std::vector<WittClass> out;
      for (int code = 0; code < 4; ++code)
        out.push_back(WittClass::from_residue(field, {(code & 1) != 0, (code & 2) != 0}));
      return out;
    }
    case FieldSpec::Kind::QuadraticallyClosed:
      return {WittClass::zero(field), WittClass::one(field)};
    default:
      fail(ErrorCode::WrongField, "W(" + field.name() + ") is infinite");
  }
}

}  // namespace bnloc
