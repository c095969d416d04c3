#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace relbps {

/// Exact integer and rational types. GMP keeps mpq_class in lowest terms with a
/// positive denominator after every arithmetic operation.
using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an argument lies outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct PrimePower {
  std::int64_t prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-exponent decomposition of a positive integer. Factors are kept in
/// strictly increasing prime order; base 1 has no factors.
class Factorization {
 public:
  Factorization() = default;

  std::int64_t base() const { return base_; }
  const std::vector<PrimePower>& factors() const& { return factors_; }
  std::vector<PrimePower> factors() && { return std::move(factors_); }

  /// Product of prime^exponent over all factors.
  std::int64_t product() const;
  bool square_free() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  friend Factorization factorize(std::int64_t n);

  std::int64_t base_ = 1;
  std::vector<PrimePower> factors_;
};

Factorization factorize(std::int64_t n);

bool is_prime(std::int64_t n);

/// Number of distinct primes dividing n.
int omega(std::int64_t n);

/// Möbius function: 0 unless n is square-free, otherwise (-1)^omega(n).
int mobius(std::int64_t n);

bool is_square_free(std::int64_t n);

/// Positive divisors of n in ascending order.
std::vector<std::int64_t> divisors(std::int64_t n);

/// The divisors k of n whose cofactor n/k is square-free, ascending.
std::vector<std::int64_t> squarefree_cofactor_divisors(std::int64_t n);

/// Generalized binomial n(n-1)...(n-k+1)/k!, defined for every integer n and
/// k >= 0. binomial(n, 0) = 1 for all n.
Integer binomial(const Integer& n, std::int64_t k);
Integer binomial(std::int64_t n, std::int64_t k);

/// Exact valuation split: n = p^alpha * cofactor with p not dividing cofactor.
struct PrimePowerSplit {
  int alpha;
  std::int64_t cofactor;

  friend bool operator==(const PrimePowerSplit&, const PrimePowerSplit&) = default;
};

PrimePowerSplit prime_power_split(std::int64_t n, std::int64_t p);

/// (-1)^e for any integer e.
inline int sign_power(std::int64_t e) { return (e % 2 == 0) ? 1 : -1; }

Integer power(std::int64_t base, unsigned long exponent);

/// True when the rational has denominator 1.
inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

}  // namespace relbps
