#include "bnloc/arith.hpp"

#include "bnloc/errors.hpp"

#include <algorithm>
#include <map>

namespace bnloc {

namespace mp = boost::multiprecision;

namespace {

constexpr unsigned kTrialBound = 1u << 16;
constexpr int kRhoIterations = 1 << 20;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> sieve(kTrialBound + 1, true);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kTrialBound; ++i) {
      if (!sieve[i]) continue;
      out.push_back(i);
      for (unsigned long j = static_cast<unsigned long>(i) * i; j <= kTrialBound; j += i) sieve[j] = false;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_witness(const Integer& n, const Integer& a, const Integer& d, unsigned s) {
  Integer x = mp::powm(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;
}

Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (Integer c = 1; c < 64; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) { return (v * v + c) % n; };
    for (int it = 0; it < kRhoIterations && d == 1; ++it) {
      x = step(x);
      y = step(step(y));
      d = mp::gcd(x > y ? Integer(x - y) : Integer(y - x), n);
    }
    if (d != 1 && d != n) return d;
  }
  fail(ErrorCode::Unsupported, "cannot factor " + to_string(n));
}

void factor_into(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Integer d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // These bases are deterministic below 3.3e24 and overwhelmingly reliable above.
  for (unsigned a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u}) {
    if (miller_rabin_witness(n, Integer(a), d, s)) return false;
  }
  return true;
}

std::vector<std::pair<Integer, int>> factorize(const Integer& n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "cannot factor zero");
  Integer m = mp::abs(n);
  std::map<Integer, int> found;
  for (unsigned p : small_primes()) {
    if (Integer(p) * p > m) break;
    while (m % p == 0) {
      m /= p;
      ++found[Integer(p)];
    }
  }
  if (m > 1) {
    if (m <= Integer(kTrialBound) * kTrialBound)
      ++found[m];
    else
      factor_into(m, found);
  }
  return {found.begin(), found.end()};
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

int legendre(const Integer& a, const Integer& p) {
  Integer r = mod_floor(a, p);
  if (r == 0) return 0;
  Integer t = mp::powm(r, (p - 1) / 2, p);
  return t == 1 ? 1 : -1;
}

Integer least_nonresidue(const Integer& p) {
  for (Integer a = 2;; ++a) {
    if (legendre(a, p) == -1) return a;
  }
}

Integer radical(const Integer& n) {
  Integer out = 1;
  for (const auto& [p, e] : factorize(n)) out *= p;
  return out;
}

bool is_smooth_over(const Integer& n, const Integer& m) {
  if (n == 0) return false;
  Integer rest = mp::abs(n);
  Integer g;
  while ((g = mp::gcd(rest, m)) != 1) {
    while (rest % g == 0) rest /= g;
  }
  return rest == 1;
}

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    bool neg = !s.empty() && s[0] == '-';
    std::string digits = neg ? s.substr(1) : s;
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      fail(ErrorCode::ParseError, "not a rational number: '" + text + "'");
    Integer v(digits);
    return neg ? Integer(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

}  // namespace bnloc
