#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bnloc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Prime factorization of |n| as (prime, exponent) pairs in increasing order.
/// Throws Unsupported when a cofactor resists Pollard rho.
std::vector<std::pair<Integer, int>> factorize(const Integer& n);

bool is_prime(const Integer& n);

/// Legendre symbol (a/p) for an odd prime p: 0, 1 or -1.
int legendre(const Integer& a, const Integer& p);

/// Smallest quadratic non-residue modulo the odd prime p.
Integer least_nonresidue(const Integer& p);

Integer mod_floor(const Integer& a, const Integer& m);

/// Product of the distinct primes dividing n (n != 0); radical(1) = 1.
Integer radical(const Integer& n);

/// True iff every prime factor of n divides m.
bool is_smooth_over(const Integer& n, const Integer& m);

std::string to_string(const Integer& n);

/// "a" or "a/b" with b > 0 in lowest terms.
std::string to_string(const Rational& r);

/// Parses "a" or "a/b" with optional sign.
Rational parse_rational(const std::string& text);

}  // namespace bnloc
