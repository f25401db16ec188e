#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "latcensus/bounded_real.hpp"

namespace latcensus::arith {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

class SieveTable;

/// A positive integer with its full prime factorization. Primes are
/// strictly increasing, exponents are >= 1, and the factor list is empty
/// exactly for the value 1.
///
/// Values are limited to 64 bits; every quantity that can outgrow that
/// (counts, partition numbers, automorphism orders) is an mpz_class.
class FactoredInt {
 public:
  FactoredInt() = default;

  // Validates the invariants and recomputes the value.
  static FactoredInt from_factors(std::vector<PrimePower> factors);

  std::uint64_t value() const { return value_; }
  std::span<const PrimePower> factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  friend bool operator==(const FactoredInt&, const FactoredInt&) = default;

 private:
  friend FactoredInt factorize(std::uint64_t n);
  friend FactoredInt factorize(std::uint64_t n, const SieveTable& sieve);

  FactoredInt(std::uint64_t value, std::vector<PrimePower> factors)
      : value_(value), factors_(std::move(factors)) {}

  std::uint64_t value_ = 1;
  std::vector<PrimePower> factors_;
};

FactoredInt operator*(const FactoredInt& a, const FactoredInt& b);
std::string to_string(const FactoredInt& f);

/// Smallest-prime-factor table for 2 <= k <= limit, 32-bit entries.
/// Memory is limit + 1 words. Immutable after construction.
class SieveTable {
 public:
  explicit SieveTable(std::uint32_t limit);

  std::uint32_t limit() const { return limit_; }
  std::uint32_t smallest_prime_factor(std::uint32_t k) const { return spf_.at(k); }
  bool is_prime(std::uint32_t k) const { return k >= 2 && spf_.at(k) == k; }
  std::span<const std::uint32_t> primes() const { return primes_; }

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

inline constexpr std::uint32_t kDefaultSieveLimit = 10'000'000;

// Throws std::invalid_argument when limit < 2.
SieveTable build_sieve(std::uint64_t limit);

// Process-wide sieve covering at least `limit`, built on first use and
// shared read-only afterwards.
std::shared_ptr<const SieveTable> shared_sieve(std::uint64_t limit);

// kDefaultSieveLimit, or LATCENSUS_SIEVE_LIMIT when set to an integer >= 2.
std::uint64_t configured_sieve_limit();
// Shared sieve covering min(V, configured_sieve_limit()); factorize() falls
// back to trial division above its limit.
std::shared_ptr<const SieveTable> sieve_for(std::uint64_t V);

// Primes p <= limit (plain Eratosthenes bitmap; cheaper than a full spf table).
std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint64_t limit);

FactoredInt factorize(std::uint64_t n);
FactoredInt factorize(std::uint64_t n, const SieveTable& sieve);

bool is_prime(std::uint64_t n);

int mobius(const FactoredInt& n);
std::uint64_t euler_phi(const FactoredInt& n);
unsigned omega(const FactoredInt& n);
bool is_squarefree(const FactoredInt& n);

// f_n(d) = prod_{p | d} (p^{n-1} - 1) / (p^n - p^{n-1}) for squarefree d, else 0.
mpq_class f_n(unsigned n, const FactoredInt& d);

// Number of integer partitions of k (pentagonal recurrence, memoized).
mpz_class partitions(unsigned k);

// a(n): isomorphism classes of abelian groups of order n.
mpz_class abelian_group_count(const FactoredInt& n);

/// A sum that is exact when cheap and always available as an enclosure.
struct RationalSum {
  std::optional<mpq_class> exact;
  ErrBoundedReal approx;
};

// Above this bound the harmonic-type sums switch to bounded floating point.
inline constexpr std::uint64_t kExactSumLimit = 10'000;

// sum_{d <= t} 1 / phi(d)
RationalSum landau_sum(std::uint64_t t);
mpq_class landau_sum_exact(std::uint64_t t);
// theta * (log t + gamma - sum_p log p / (p^2 - p + 1))
ErrBoundedReal landau_prediction(std::uint64_t t, long double tol = 1e-6L);

// sum_{n <= V, n squarefree} 1 / phi(n)
RationalSum ward_sum(std::uint64_t V);
mpq_class ward_sum_exact(std::uint64_t V);

// #{k <= x : gcd(k, d) = 1, k squarefree}
std::uint64_t squarefree_coprime_count(std::uint64_t x, const FactoredInt& d);
// (6x / pi^2) * prod_{p | d} (1 + 1/p)^{-1}
ErrBoundedReal squarefree_coprime_prediction(std::uint64_t x, const FactoredInt& d);

// Euler-Mascheroni constant, 20 digits, err 1e-19.
ErrBoundedReal euler_gamma();

mpz_class ipow(std::uint64_t base, unsigned exp);

}  // namespace latcensus::arith
