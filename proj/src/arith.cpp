#include "relbps/arith.hpp"

#include <algorithm>
#include <limits>

namespace relbps {

namespace {

constexpr std::int64_t kSmallPrimeBound = 1 << 16;

// Primes below 2^16; trial division by these settles any n < 2^32 and covers
// every input the verification grids produce.
const std::vector<std::int64_t>& small_primes() {
  static const std::vector<std::int64_t> primes = [] {
    std::vector<bool> composite(kSmallPrimeBound, false);
    std::vector<std::int64_t> out;
    for (std::int64_t i = 2; i < kSmallPrimeBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::int64_t j = i * i; j < kSmallPrimeBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

void require_positive(std::int64_t n) {
  if (n <= 0) throw DomainError("positive integer required, got " + std::to_string(n));
}

}  // namespace

std::int64_t Factorization::product() const {
  std::int64_t out = 1;
  for (const auto& [p, e] : factors_)
    for (int i = 0; i < e; ++i) out *= p;
  return out;
}

bool Factorization::square_free() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& f) { return f.exponent == 1; });
}

Factorization factorize(std::int64_t n) {
  require_positive(n);
  Factorization out;
  out.base_ = n;
  std::int64_t rest = n;
  auto take = [&](std::int64_t p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e > 0) out.factors_.push_back({p, e});
  };
  for (std::int64_t p : small_primes()) {
    if (p * p > rest) break;
    take(p);
  }
  // Past the table: continue with odd candidates.
  for (std::int64_t p = kSmallPrimeBound + 1; p <= rest / p; p += 2) take(p);
  if (rest > 1) out.factors_.push_back({rest, 1});
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  const auto f = factorize(n);
  return f.factors().size() == 1 && f.factors().front().exponent == 1;
}

int omega(std::int64_t n) { return static_cast<int>(factorize(n).factors().size()); }

bool is_square_free(std::int64_t n) { return factorize(n).square_free(); }

int mobius(std::int64_t n) {
  const auto f = factorize(n);
  if (!f.square_free()) return 0;
  return sign_power(static_cast<std::int64_t>(f.factors().size()));
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  const auto f = factorize(n);
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : f.factors()) {
    const std::size_t count = out.size();
    std::int64_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> squarefree_cofactor_divisors(std::int64_t n) {
  // n/k is square-free iff k keeps each prime p^e || n with exponent e or e-1.
  const auto f = factorize(n);
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : f.factors()) {
    std::int64_t low = 1;
    for (int i = 0; i < e - 1; ++i) low *= p;
    const std::int64_t high = low * p;
    std::vector<std::int64_t> next;
    next.reserve(out.size() * 2);
    for (std::int64_t k : out) {
      next.push_back(k * low);
      next.push_back(k * high);
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer binomial(const Integer& n, std::int64_t k) {
  if (k < 0) throw DomainError("binomial: lower argument must be nonnegative");
  if (static_cast<std::uint64_t>(k) > std::numeric_limits<unsigned long>::max())
    throw DomainError("binomial: lower argument too large");
  Integer out;
  // mpz_bin_ui implements the falling-factorial extension for negative n.
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

Integer binomial(std::int64_t n, std::int64_t k) {
  if (k < 0) throw DomainError("binomial: lower argument must be nonnegative");
  // mpz_bin_uiui is far faster than the generic path for large n.
  if (n >= 0) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
  }
  return binomial(Integer(static_cast<long>(n)), k);
}

PrimePowerSplit prime_power_split(std::int64_t n, std::int64_t p) {
  require_positive(n);
  if (!is_prime(p)) throw DomainError("prime_power_split: " + std::to_string(p) + " is not prime");
  PrimePowerSplit out{0, n};
  while (out.cofactor % p == 0) {
    out.cofactor /= p;
    ++out.alpha;
  }
  return out;
}

Integer power(std::int64_t base, unsigned long exponent) {
  Integer out;
  Integer b(static_cast<long>(base));
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), exponent);
  return out;
}

}  // namespace relbps
