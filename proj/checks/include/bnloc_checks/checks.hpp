#pragma once

#include "bnloc/bn_ring.hpp"
#include "bnloc/engine.hpp"
#include "bnloc/euler.hpp"
#include "bnloc/witt.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace bnloc::checks {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

using Rng = std::mt19937_64;

// ---------------------------------------------------------------- generators

/// Random diagonal form of rank <= max_rank with small entries.
QForm random_form(Rng& rng, const FieldSpec& field, int max_rank = 4);
WittClass random_witt(Rng& rng, const FieldSpec& field);
/// Random f(e) + c*q0 with sparse small coefficients.
BNElem random_bn(Rng& rng, const CoeffTheory& theory, const FieldSpec& field, int truncation);
/// Random exact Laurent polynomial with exponents in [lo, hi].
LocalizedClass random_laurent(Rng& rng, const ContextPtr& ctx, int lo, int hi, TwistParity tag);
/// Random non-virtual problem over Q/HW with 1..4 components and odd or even weights.
LocalizationProblem random_problem(Rng& rng);

/// Readable form of a localized class for diagnostics.
std::string class_text(const LocalizedClass& x);

// ---------------------------------------------------------------- oracles

/// Product by expanding into monomials q0^a e^b and rewriting with
/// q0^2 -> 1 and q0*e -> -e until no rule applies.
BNElem rewrite_product(const BNElem& a, const BNElem& b);

/// Brute-force Witt classes of F_p: generates every diagonal form of rank
/// <= 4, strips hyperbolic planes found by exhaustive isotropic-vector search
/// and keys the anisotropic kernel by (rank, determinant square class).
struct FpClosure {
  int class_count = 0;
  /// Canonical class of each form agrees with its brute-force kernel.
  bool canonical_agrees = false;
  bool addition_matches = false;
  bool multiplication_matches = false;
  std::string detail;
};
FpClosure fp_closure(std::int64_t p);

// ---------------------------------------------------------------- suites

CheckResult check_relations();
CheckResult check_rewriting(std::uint64_t seed, int pairs, int truncation);
CheckResult check_fp_closure(std::int64_t p);
CheckResult check_witt_laws(std::uint64_t seed, const FieldSpec& field, int samples);
/// Euler class of (m,+) times its inverse is 1 in W(Q)[1/inverted, 1/e].
CheckResult check_key_lemma(int m, const Integer& inverted, int truncation);
/// (n*et)^2 = -4 n^2 e for the weight-2n class.
CheckResult check_even_square(int n);
CheckResult check_finite_level(int m, int max_exponent);
CheckResult check_bott_round_trip(std::uint64_t seed, int problems);

/// Every suite with fixed parameters; selfcheck fails if any entry fails.
std::vector<CheckResult> run_selfcheck(std::uint64_t seed);

}  // namespace bnloc::checks
