#include <doctest.h>

#include <cstdlib>

#include "latcensus/arith.hpp"
#include "oracles.hpp"

using namespace latcensus;
using namespace latcensus::arith;

namespace {
std::vector<std::pair<std::uint64_t, unsigned>> pairs(const FactoredInt& f) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (const auto& pp : f.factors()) out.emplace_back(pp.prime, pp.exponent);
  return out;
}
}  // namespace

TEST_CASE("sieve smallest prime factors") {
  const auto s10 = build_sieve(10);
  CHECK(s10.smallest_prime_factor(4) == 2);
  CHECK(s10.smallest_prime_factor(9) == 3);
  CHECK(s10.smallest_prime_factor(7) == 7);
  CHECK(build_sieve(2).smallest_prime_factor(2) == 2);
  CHECK(build_sieve(30).smallest_prime_factor(30) == 2);
  CHECK_THROWS_AS(build_sieve(1), std::invalid_argument);

  const auto s = build_sieve(20000);
  for (std::uint32_t k = 2; k <= 20000; ++k) {
    REQUIRE(s.smallest_prime_factor(k) == oracle::trial_factor(k).front().first);
  }
  const auto primes = primes_up_to(20000);
  std::size_t count = 0;
  for (std::uint32_t k = 2; k <= 20000; ++k) count += s.is_prime(k);
  CHECK(primes->size() == count);
}

TEST_CASE("factorize") {
  CHECK(factorize(1).value() == 1);
  CHECK(factorize(1).is_one());
  CHECK(pairs(factorize(12)) == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 1}});
  CHECK(pairs(factorize(97)) == std::vector<std::pair<std::uint64_t, unsigned>>{{97, 1}});
  const auto sieve = build_sieve(1000);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    REQUIRE(pairs(factorize(n)) == oracle::trial_factor(n));
    // beyond the sieve limit the fallback must agree
    REQUIRE(pairs(factorize(n, sieve)) == oracle::trial_factor(n));
  }
  const std::uint64_t big = 4294967291ull * 3ull;  // prime above 2^32 times 3
  CHECK(pairs(factorize(big)) == oracle::trial_factor(big));
  CHECK(factorize(6) * factorize(10) == factorize(60));
  CHECK(to_string(factorize(360)) == "2^3*3^2*5");
  CHECK_THROWS(FactoredInt::from_factors({{4, 1}}));
  CHECK_THROWS(FactoredInt::from_factors({{3, 1}, {2, 1}}));
}

TEST_CASE("mobius, phi, omega, squarefree") {
  CHECK(mobius(factorize(1)) == 1);
  CHECK(mobius(factorize(30)) == -1);
  CHECK(mobius(factorize(18)) == 0);
  CHECK(euler_phi(factorize(1)) == 1);
  CHECK(euler_phi(factorize(12)) == 4);
  CHECK(euler_phi(factorize(101)) == 100);
  CHECK(omega(factorize(360)) == 3);
  CHECK_FALSE(is_squarefree(factorize(360)));
  CHECK(omega(factorize(1)) == 0);
  CHECK(is_squarefree(factorize(1)));
  CHECK(omega(factorize(30)) == 3);
  CHECK(is_squarefree(factorize(30)));
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    const auto f = factorize(n);
    REQUIRE(euler_phi(f) == oracle::phi_by_gcd(n));
    REQUIRE(mobius(f) == oracle::mobius_by_definition(n));
    REQUIRE(is_squarefree(f) == oracle::squarefree_by_division(n));
  }
}

TEST_CASE("multiplicativity on coprime pairs") {
  for (std::uint64_t a = 1; a <= 60; ++a) {
    for (std::uint64_t b = 1; b <= 60; ++b) {
      if (std::gcd(a, b) != 1) continue;
      const auto fa = factorize(a), fb = factorize(b), fab = factorize(a * b);
      REQUIRE(mobius(fab) == mobius(fa) * mobius(fb));
      REQUIRE(euler_phi(fab) == euler_phi(fa) * euler_phi(fb));
      for (unsigned n = 2; n <= 4; ++n) REQUIRE(f_n(n, fab) == f_n(n, fa) * f_n(n, fb));
      REQUIRE(abelian_group_count(fab) == abelian_group_count(fa) * abelian_group_count(fb));
    }
  }
}

TEST_CASE("f_n") {
  CHECK(f_n(2, factorize(6)) == mpq_class(1, 6));
  CHECK(f_n(3, factorize(2)) == mpq_class(3, 4));
  CHECK(f_n(2, factorize(4)) == 0);
  CHECK(f_n(2, factorize(1)) == 1);
  CHECK_THROWS_AS(f_n(1, factorize(2)), std::invalid_argument);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) CHECK(f_n(2, factorize(p)) == mpq_class(1, p));
  // f_n(d) <= 2^omega(d) / d on squarefree d
  for (unsigned n = 2; n <= 4; ++n) {
    for (std::uint64_t d = 1; d <= 20000; ++d) {
      const auto f = factorize(d);
      if (!is_squarefree(f)) continue;
      REQUIRE(f_n(n, f) <= mpq_class(1ul << omega(f), d));
    }
  }
}

TEST_CASE("mobius divisor-sum identity") {
  for (unsigned n = 2; n <= 4; ++n) {
    for (std::uint64_t q = 1; q <= 300; ++q) {
      mpq_class lhs = 0;
      for (std::uint64_t d = 1; d <= q; ++d) {
        if (q % d == 0) lhs += mpq_class(oracle::mobius_by_definition(d), 1) / mpq_class(oracle::ipow(d, n));
      }
      mpq_class rhs = 1;
      for (const auto& [p, e] : oracle::trial_factor(q)) rhs *= 1 - mpq_class(1) / mpq_class(oracle::ipow(p, n));
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("partitions and abelian group counts") {
  CHECK(partitions(0) == 1);
  CHECK(partitions(4) == 5);
  CHECK(partitions(5) == 7);
  for (unsigned k = 0; k <= 40; ++k) REQUIRE(partitions(k) == static_cast<unsigned long>(oracle::partitions_naive(k, k)));
  CHECK(partitions(100) == mpz_class("190569292"));
  CHECK(abelian_group_count(factorize(16)) == 5);
  CHECK(abelian_group_count(factorize(72)) == 6);
  CHECK(abelian_group_count(factorize(30)) == 1);
  CHECK(abelian_group_count(factorize(1)) == 1);
}

TEST_CASE("landau and ward sums") {
  CHECK(landau_sum_exact(5) == mpq_class(13, 4));
  CHECK(landau_sum_exact(1) == 1);
  CHECK(ward_sum_exact(5) == mpq_class(11, 4));
  CHECK(ward_sum_exact(1) == 1);
  CHECK(ward_sum_exact(4) == mpq_class(5, 2));

  mpq_class l = 0, w = 0;
  for (std::uint64_t d = 1; d <= 300; ++d) {
    l += mpq_class(1, oracle::phi_by_gcd(d));
    if (oracle::squarefree_by_division(d)) w += mpq_class(1, oracle::phi_by_gcd(d));
    REQUIRE(landau_sum_exact(d) == l);
    REQUIRE(ward_sum_exact(d) == w);
  }
  const auto small = landau_sum(300);
  REQUIRE(small.exact);
  CHECK(*small.exact == l);
  CHECK(small.approx.overlaps(ErrBoundedReal::from_rational(l)));

  // the floating path encloses the exact value
  const auto exact = landau_sum_exact(kExactSumLimit);
  const auto above = landau_sum(kExactSumLimit + 1);
  CHECK_FALSE(above.exact);
  const mpq_class next = exact + mpq_class(1, euler_phi(factorize(kExactSumLimit + 1)));
  CHECK(above.approx.overlaps(ErrBoundedReal::from_rational(next)));
  CHECK(above.approx.err < 1e-12L);

  ErrBoundedReal prev{0, 0};
  for (std::uint64_t t : {1, 10, 100, 1000, 20000, 100000}) {
    const auto s = landau_sum(t).approx;
    CHECK(s.upper() >= prev.lower());
    prev = s;
  }
  const auto pred = landau_prediction(1000000);
  CHECK(std::fabs(static_cast<double>(landau_sum(1000000).approx.value - pred.value)) <= 0.01);
}

TEST_CASE("squarefree coprime counts") {
  CHECK(squarefree_coprime_count(10, factorize(1)) == 7);
  CHECK(squarefree_coprime_count(10, factorize(2)) == 4);
  CHECK(squarefree_coprime_count(1, factorize(1)) == 1);
  for (std::uint64_t d : {1, 2, 3, 6, 10, 30}) {
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= 3000; ++k) c += std::gcd(k, d) == 1 && oracle::squarefree_by_division(k);
    REQUIRE(squarefree_coprime_count(3000, factorize(d)) == c);
  }
}

TEST_CASE("euler gamma and ipow") {
  CHECK(euler_gamma().contains(0.57721566490153286061L));
  CHECK(euler_gamma().err <= 1e-18L);
  CHECK(ipow(3, 40) == oracle::ipow(3, 40));
  CHECK(ipow(7, 0) == 1);
}

TEST_CASE("sieve limit override") {
  CHECK(configured_sieve_limit() >= 2);
  ::setenv("LATCENSUS_SIEVE_LIMIT", "5000", 1);
  CHECK(configured_sieve_limit() == 5000);
  CHECK(sieve_for(100000)->limit() >= 5000);
  ::setenv("LATCENSUS_SIEVE_LIMIT", "junk", 1);
  CHECK(configured_sieve_limit() == kDefaultSieveLimit);
  ::unsetenv("LATCENSUS_SIEVE_LIMIT");
}
