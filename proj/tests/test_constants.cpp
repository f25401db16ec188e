#include <doctest.h>

#include <cmath>
#include <numbers>

#include "latcensus/arith.hpp"
#include "latcensus/constants.hpp"
#include "latcensus/errors.hpp"

using namespace latcensus;
using namespace latcensus::constants;

namespace {

// Plain bracket S_J + int_{J+1}^inf <= zeta(k) <= S_J + int_J^inf.
std::pair<long double, long double> zeta_bracket(int k, unsigned J) {
  long double s = 0;
  for (unsigned j = J; j >= 1; --j) s += std::pow(static_cast<long double>(j), -k);
  const long double lo = s + std::pow(static_cast<long double>(J + 1), 1 - k) / (k - 1);
  const long double hi = s + std::pow(static_cast<long double>(J), 1 - k) / (k - 1);
  return {lo, hi};
}

bool within(const ErrBoundedReal& x, long double lo, long double hi) { return x.upper() >= lo && x.lower() <= hi; }

}  // namespace

TEST_CASE("error-bounded arithmetic") {
  const auto a = ErrBoundedReal(2.0L, 1e-3L);
  const auto b = ErrBoundedReal(3.0L, 2e-3L);
  CHECK((a + b).contains(5.0L));
  CHECK((a + b).err >= 3e-3L);
  CHECK((a * b).err >= 2.0L * 2e-3L + 3.0L * 1e-3L);
  CHECK((a / b).contains(2.0L / 3.0L));
  CHECK(reciprocal(b).contains(1.0L / 3.0L));
  CHECK(log(ErrBoundedReal::exact(std::numbers::e_v<long double>)).contains(1.0L));
  CHECK(exp(ErrBoundedReal::exact(0.0L)).contains(1.0L));
  CHECK(pow(a, 3).contains(8.0L));
  CHECK(ErrBoundedReal::from_rational(mpq_class(1, 3)).contains(1.0L / 3.0L));
  CHECK(ErrBoundedReal::from_integer(mpz_class("123456789012345678901234567890")).contains(1.2345678901234567890123456789e29L));
  CHECK(a.overlaps(ErrBoundedReal(2.0015L, 1e-3L)));
  CHECK_FALSE(a.overlaps(ErrBoundedReal(2.5L, 1e-3L)));

  CompensatedSum s;
  for (int i = 0; i < 100000; ++i) s.add(0.1L);
  CHECK(s.result().contains(10000.0L) == (std::fabs(s.result().value - 10000.0L) <= s.result().err));
  CHECK(std::fabs(s.result().value - 10000.0L) < 1e-9L);
}

TEST_CASE("zeta") {
  const auto z2 = zeta(2, 1e-14L);
  CHECK(z2.err <= 1e-14L);
  CHECK(z2.contains(std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 6.0L) ==
        true);
  for (int k = 2; k <= 12; ++k) {
    // independent bracket; generous J so the bracket is narrow
    const auto [lo, hi] = zeta_bracket(k, k == 2 ? 2000000 : 20000);
    REQUIRE(within(zeta(k), lo, hi));
  }
  CHECK(zeta(4).contains(std::pow(std::numbers::pi_v<long double>, 4) / 90.0L));
  for (int k = 4; k <= 40; ++k) {
    const auto z = zeta(k, 1e-15L);
    REQUIRE(z.value - 1.0L - std::ldexp(1.0L, -k) <= 2.0L * std::pow(3.0L, -k) + z.err);
    REQUIRE(zeta_minus_one(k, std::ldexp(1e-15L, -k)).overlaps(z - ErrBoundedReal::exact(1.0L)));
  }
  const auto z50 = zeta(50);
  CHECK(z50.upper() >= 1.0L);
  CHECK(z50.lower() <= 1.0L + 1e-14L);
  CHECK_THROWS_AS(zeta(1), std::invalid_argument);
}

TEST_CASE("xi products") {
  CHECK(xi(2, 2).overlaps(zeta(2)));
  CHECK(xi(2, 4).overlaps(zeta(2) * zeta(3) * zeta(4)));
  const auto inv = reciprocal(xi_inf(2));
  CHECK(std::fabs(static_cast<double>(inv.value) - 0.44) <= 0.005);
  const auto inv2 = reciprocal(zeta(2) * xi_inf(2));
  CHECK(std::fabs(static_cast<double>(inv2.value) - 0.26) <= 0.005);
  CHECK_THROWS_AS(xi_inf(1), std::invalid_argument);
  CHECK_THROWS_AS(xi(3, 2), std::invalid_argument);
}

TEST_CASE("theta") {
  const auto t = theta();
  CHECK(t.err <= 1e-12L);
  // "1.94359..." is a truncated expansion
  CHECK(t.lower() >= 1.94359L);
  CHECK(t.upper() < 1.94360L);
  CHECK(t.contains(1.9435964368207592L));
  CHECK((t * zeta(6) / (zeta(2) * zeta(3))).contains(1.0L));
  const auto ep = theta_euler_product();
  CHECK(ep.value.overlaps(t));
  CHECK(ep.prime_cutoff >= 1000000u);
}

TEST_CASE("theta_n") {
  for (int n = 2; n <= 16; ++n) {
    const auto tn = theta_n(n);
    REQUIRE(tn.err <= kDefaultTol);
    REQUIRE(tn.upper() < theta().lower() + 1e-12L);
    if (n > 2) REQUIRE(theta_n(n - 1).lower() < tn.upper());
  }
  CHECK(std::fabs(static_cast<double>((theta_n(16) - theta()).value)) <= 1e-3);

  // theta_2 against partial sums of sum_d f_2(d)/d: a lower bound that
  // approaches from below
  const std::uint64_t D = 200000;
  const auto sieve = arith::build_sieve(D);
  long double partial = 0;
  for (std::uint64_t d = 1; d <= D; ++d) {
    const auto f = arith::f_n(2, arith::factorize(d, sieve));
    if (f != 0) partial += static_cast<long double>(f.get_d()) / d;
  }
  const auto t2 = theta_n(2);
  CHECK(partial <= t2.upper() + 1e-9L);
  CHECK(t2.value - partial < 5e-4L);

  // refinement nests
  const auto coarse = theta_n(3, 1e-6L), fine = theta_n(3, 1e-11L);
  CHECK(fine.lower() >= coarse.lower() - 4 * ErrBoundedReal::kEps);
  CHECK(fine.upper() <= coarse.upper() + 4 * ErrBoundedReal::kEps);
  CHECK_THROWS_AS(theta_n(1), std::invalid_argument);
}

TEST_CASE("theta sandwich") {
  for (int n = 2; n <= 16; ++n) {
    const auto s = theta_sandwich(n);
    const auto tn = theta_n(n);
    REQUIRE(s.lower.lower() <= tn.upper());
    REQUIRE(tn.lower() <= s.upper.upper());
  }
  const auto s10 = theta_sandwich(10);
  CHECK((s10.upper - s10.lower).value <= (theta() * ErrBoundedReal::exact(std::ldexp(1.0L, -9))).value);
  CHECK(std::fabs(static_cast<double>((theta_sandwich(16).upper - theta()).value)) <= 1e-3);
}

TEST_CASE("rho and rho_n") {
  CHECK(rho().overlaps(zeta(2)));
  CHECK(std::fabs(static_cast<double>(rho().value) - 1.6449340668) < 1e-9);
  for (int n = 2; n <= 16; ++n) {
    const auto r = rho_n(n);
    REQUIRE(r.err <= kDefaultTol);
    // the defining product times zeta(n+1) is 1
    REQUIRE((r * zeta(n + 1)).contains(1.0L));
  }
  CHECK_THROWS_AS(rho_n(1), std::invalid_argument);
}

TEST_CASE("density limits") {
  const auto c = density_cocyclic_limit();
  CHECK(c.value >= 0.845L);
  CHECK(c.value <= 0.855L);
  CHECK(c.err <= 1e-10L);
  CHECK(c.overlaps(theta() / xi_inf(2)));
  const auto s = density_squarefree_limit();
  CHECK(s.value >= 0.7165L);
  CHECK(s.value <= 0.7175L);
  CHECK(s.overlaps(reciprocal(xi_inf(3))));
}

TEST_CASE("gekeler constants") {
  const auto c = gekeler_cyclic().value;
  const auto s = gekeler_squarefree().value;
  CHECK(c.value >= 0.805L);
  CHECK(c.value <= 0.815L);
  CHECK(s.value >= 0.435L);
  CHECK(s.value <= 0.445L);
  // direct product over small primes brackets the accelerated value from above
  long double direct = 1;
  const auto primes = arith::primes_up_to(100000);
  for (const auto p : *primes) {
    const long double x = p;
    direct *= 1.0L - 1.0L / ((x * x - 1) * x * (x - 1));
  }
  CHECK(std::fabs(direct - c.value) < 1e-12L);
}

TEST_CASE("landau prime sum") {
  EulerOptions o;
  o.tol = 1e-6L;
  const auto l = landau_prime_sum(o);
  CHECK(l.value.err <= 1e-6L);
  long double s = 0;
  const auto primes = arith::primes_up_to(1000000);
  for (const auto p : *primes) {
    const long double x = p;
    s += std::log(x) / (x * x - x + 1);
  }
  CHECK(s <= l.value.upper());
  CHECK(l.value.value - s < 1e-5L);
}

TEST_CASE("precision unreachable") {
  EulerOptions o;
  o.tol = 1e-30L;
  o.max_prime_cutoff = 1000000;
  CHECK_THROWS_AS(theta_n_eval(2, o), PrecisionUnreachable);
}
