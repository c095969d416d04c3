#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relbps/arith.hpp"

namespace relbps {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One evaluated congruence lhs == rhs (mod modulus). Both sides are kept as
/// full integers so a failing case can be reproduced from its record alone.
struct CongruenceCase {
  std::vector<std::pair<std::string, std::int64_t>> parameters;
  Integer lhs;
  Integer rhs;
  Integer modulus;
  bool holds = false;

  std::int64_t parameter(std::string_view name) const;
};

/// Builds a case and evaluates `holds` from the three integers.
CongruenceCase make_case(std::vector<std::pair<std::string, std::int64_t>> parameters, Integer lhs,
                         Integer rhs, Integer modulus);

enum class Lemma { Peng, SpecialP2, FDivisibility, EntryIntegrality };

std::string_view to_string(Lemma lemma);

struct CongruenceReport {
  Lemma lemma = Lemma::Peng;
  std::string grid;
  std::int64_t total_cases = 0;
  std::vector<CongruenceCase> failures;
  /// Failure counts of side checks that are not congruence cases (method
  /// mismatches, route disagreements, determinants). All must be zero to pass.
  std::map<std::string, std::int64_t> side_check_failures;

  bool passed() const;
};

/// binomial(p^a x - 1, p^a y - 1) == binomial(p^{a-1} x - 1, p^{a-1} y - 1) mod p^{2a}.
/// p = 2 requires alpha >= 2; use check_special for p = 2, alpha = 1.
CongruenceCase check_peng(std::int64_t p, int alpha, std::int64_t a, std::int64_t b);

/// binomial(2ka - 1, 2k - 1) == (-1)^{a+1} binomial(ka - 1, k - 1) mod 4, k odd.
CongruenceCase check_special(std::int64_t k, std::int64_t a);

/// The pair {p^{alpha-1} l, p^alpha l} attached to one l in I(s / (p^alpha t)).
struct RegroupPair {
  std::int64_t l;
  std::int64_t low;
  std::int64_t high;
};

/// Partition of I(s/t) into pairs indexed by l in I(s / (p^alpha t)), where
/// p^alpha || s/t with alpha >= 1.
std::vector<RegroupPair> regroup(std::int64_t s, std::int64_t t, std::int64_t w, std::int64_t p);

/// f(l) = sum over k in {p^{alpha-1} l, p^alpha l} of
///   (-1)^{omega(s/kt)} (-1)^{ktw} binomial(k(tw-1)-1, k-1).
Integer f_l(std::int64_t s, std::int64_t t, std::int64_t w, std::int64_t p, std::int64_t l);

/// Signs carried by the two terms of f(l), low k first.
std::pair<int, int> f_l_signs(std::int64_t s, std::int64_t t, std::int64_t w, std::int64_t p,
                              std::int64_t l);

/// For every prime p with p^alpha || s/t and every l: f(l) == 0 mod p^{2 alpha}.
CongruenceReport verify_divisibility(std::int64_t s, std::int64_t t, std::int64_t w);

/// C_st is integral according to the prime-by-prime divisibility argument.
bool entry_integrality_via_congruence(std::int64_t s, std::int64_t t, std::int64_t w);

// Grid drivers. Cases are evaluated on `jobs` threads and the report is
// assembled in parameter order, so the output does not depend on `jobs`.

struct PengGrid {
  std::vector<std::int64_t> primes{2, 3, 5, 7, 11, 13};
  int alpha_max = 4;
  std::int64_t ab_max = 30;
};

struct SpecialGrid {
  std::int64_t k_max = 99;
  std::int64_t a_max = 50;
};

struct DivisibilityGrid {
  std::int64_t s_max = 60;
  std::int64_t w_min = 2;
  std::int64_t w_max = 8;
};

struct IntegralityGrid {
  std::int64_t n = 60;
  std::int64_t w_min = 2;
  std::int64_t w_max = 12;
};

CongruenceReport run_peng_grid(const PengGrid& grid, unsigned jobs = 1);
CongruenceReport run_special_grid(const SpecialGrid& grid, unsigned jobs = 1);

/// Every t | s <= s_max with t != s and w in range. The side check
/// "route_disagreements" counts entries where the congruence route and the
/// denominator test on C differ.
CongruenceReport run_divisibility_grid(const DivisibilityGrid& grid, unsigned jobs = 1);

/// Integrality of C and C^{-1} for each w. One case per stored entry: lhs is the
/// numerator, modulus the denominator. Side checks count closed-form/product
/// mismatches and determinants different from 1.
CongruenceReport run_integrality_grid(const IntegralityGrid& grid, unsigned jobs = 1);

/// Default worker count: the hardware concurrency, at least 1.
unsigned default_jobs();

}  // namespace relbps
