#include "latcensus/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "latcensus/arith.hpp"
#include "latcensus/errors.hpp"

namespace latcensus::constants {

namespace {

constexpr long double kEps = ErrBoundedReal::kEps;
// Relative error budget for one evaluation of a local factor.
constexpr long double kLocalFactorUlps = 32.0L;

void require_tol(long double tol, const char* what) {
  if (!(tol > 0.0L) || !std::isfinite(tol)) {
    throw std::invalid_argument(std::string(what) + ": tol must be positive");
  }
}

// Bernoulli numbers B_2, B_4, ..., B_16.
constexpr long double kBernoulli[] = {1.0L / 6,    -1.0L / 30, 1.0L / 42,     -1.0L / 30,
                                      5.0L / 66,   -691.0L / 2730, 7.0L / 6, -3617.0L / 510};
constexpr int kEulerMaclaurinTerms = 7;

// zeta(k) = sum_{j<J} j^{-k} + J^{1-k}/(k-1) + J^{-k}/2
//           + sum_{i=1}^{M} B_{2i}/(2i)! (k)_{2i-1} J^{1-k-2i} + R,
// with |R| below the first omitted correction (x^{-k} is completely monotone).
// With skip_one the j = 1 term is left out, i.e. zeta(k) - 1 to full
// relative precision.
ErrBoundedReal zeta_euler_maclaurin(int k, std::uint64_t J, bool skip_one = false) {
  CompensatedSum acc(4.0L * kEps);
  for (std::uint64_t j = J - 1; j >= (skip_one ? 2u : 1u); --j) {
    acc.add(std::pow(static_cast<long double>(j), static_cast<long double>(-k)));
  }
  const auto Jl = static_cast<long double>(J);
  const long double base = std::pow(Jl, static_cast<long double>(-k));
  ErrBoundedReal r = acc.result();
  r += ErrBoundedReal{base * Jl / (k - 1), base * Jl / (k - 1) * 4.0L * kEps};
  r += ErrBoundedReal{base / 2.0L, base * 2.0L * kEps};
  long double rising = k;  // (k)_{2i-1}
  long double fact = 2.0L;  // (2i)!
  long double power = base / Jl;  // J^{-k-2i+1}
  for (int i = 1; i <= kEulerMaclaurinTerms + 1; ++i) {
    const long double term = kBernoulli[i - 1] / fact * rising * power;
    if (i <= kEulerMaclaurinTerms) {
      r += ErrBoundedReal{term, std::fabs(term) * 16.0L * kEps};
    } else {
      r += ErrBoundedReal{0.0L, 2.0L * std::fabs(term)};
    }
    rising *= (k + 2 * i - 1) * static_cast<long double>(k + 2 * i);
    fact *= (2 * i + 1) * static_cast<long double>(2 * i + 2);
    power /= Jl * Jl;
  }
  return r;
}

}  // namespace

ErrBoundedReal zeta(int k, long double tol) {
  if (k < 2) throw std::invalid_argument("zeta: k must be >= 2");
  require_tol(tol, "zeta");
  for (std::uint64_t J = 32; J <= (1u << 20); J *= 4) {
    const ErrBoundedReal z = zeta_euler_maclaurin(k, J);
    if (z.err <= tol) return z;
  }
  throw PrecisionUnreachable("zeta: tol " + std::to_string(static_cast<double>(tol)) +
                             " below the rounding floor");
}

ErrBoundedReal zeta_minus_one(int k, long double tol) {
  if (k < 2) throw std::invalid_argument("zeta_minus_one: k must be >= 2");
  require_tol(tol, "zeta_minus_one");
  for (std::uint64_t J = 32; J <= (1u << 20); J *= 4) {
    const ErrBoundedReal z = zeta_euler_maclaurin(k, J, true);
    if (z.err <= tol) return z;
  }
  throw PrecisionUnreachable("zeta_minus_one: tol below the rounding floor");
}

ErrBoundedReal xi(int m, int n, long double tol) {
  if (m < 2) throw std::invalid_argument("xi: m must be >= 2");
  if (n < m) throw std::invalid_argument("xi: n must be >= m");
  require_tol(tol, "xi");
  const long double per = tol / (8.0L * (n - m + 1));
  ErrBoundedReal r = ErrBoundedReal::exact(1.0L);
  for (int k = m; k <= n; ++k) r *= zeta(k, per);
  return r;
}

ErrBoundedReal xi_inf(int m, long double tol) {
  if (m < 2) throw std::invalid_argument("xi_inf: m must be >= 2");
  require_tol(tol, "xi_inf");
  // For k >= 3, log zeta(k) <= zeta(k) - 1 <= 2^{1-k}; so the factors past K
  // multiply to something in [1, exp(2^{1-K})].
  int K = std::max(m, 3);
  while (3.0L * std::expm1(std::ldexp(1.0L, 1 - K)) > tol / 4.0L) ++K;
  const long double T = std::expm1(std::ldexp(1.0L, 1 - K));
  const ErrBoundedReal tail{1.0L + T / 2.0L, T / 2.0L * (1.0L + kEps) + kEps};
  return xi(m, K, tol / 2.0L) * tail;
}

ErrBoundedReal theta() {
  static const ErrBoundedReal value = zeta(2, 1e-14L) * zeta(3, 1e-14L) / zeta(6, 1e-14L);
  return value;
}

Evaluation euler_product(const std::function<long double(std::uint64_t, long double)>& local,
                         const ErrBoundedReal& prefactor, TailBound tail,
                         const EulerOptions& opts) {
  require_tol(opts.tol, "euler_product");
  if (tail.exponent < 2) throw std::invalid_argument("euler_product: tail exponent must be >= 2");

  std::uint64_t cutoff = std::max<std::uint64_t>(opts.prime_cutoff, 100);
  long double prod = 1.0L;
  std::size_t done = 0;
  for (;;) {
    const auto primes = arith::primes_up_to(cutoff);
    for (; done < primes->size(); ++done) {
      const std::uint64_t p = (*primes)[done];
      prod *= local(p, 1.0L / static_cast<long double>(p));
    }
    const auto P = static_cast<long double>(cutoff);
    if (tail.coeff * std::pow(P, -static_cast<long double>(tail.exponent)) > 0.5L) {
      throw std::invalid_argument("euler_product: cutoff too small for tail bound");
    }
    // |log tail| <= 2 coeff sum_{j > P} j^{-s} <= 2 coeff P^{1-s} / (s - 1)
    const long double log_tail = 2.0L * tail.coeff * std::pow(P, 1.0L - tail.exponent) /
                                 static_cast<long double>(tail.exponent - 1);
    const long double rel_round =
        static_cast<long double>(done) * (kLocalFactorUlps + 1.0L) * kEps;
    const ErrBoundedReal core{prod, std::fabs(prod) * rel_round};
    const ErrBoundedReal tail_factor{1.0L, std::expm1(log_tail) * (1.0L + 4.0L * kEps)};
    const ErrBoundedReal result = prefactor * core * tail_factor;
    if (result.err <= opts.tol) return {result, cutoff};
    if (cutoff >= opts.max_prime_cutoff) {
      throw PrecisionUnreachable("euler_product: tol " + std::to_string(static_cast<double>(opts.tol)) +
                                 " not reached at prime cutoff " + std::to_string(cutoff));
    }
    cutoff = std::min(cutoff * 10, opts.max_prime_cutoff);
  }
}

Evaluation theta_euler_product(const EulerOptions& opts) {
  return euler_product(
      [](std::uint64_t, long double x) { return (1.0L + x * x / (1.0L - x)) * (1.0L - x * x); },
      zeta(2, opts.tol / 8.0L), {1.0L, 3}, opts);
}

Evaluation theta_n_eval(int n, const EulerOptions& opts) {
  if (n < 2) throw std::invalid_argument("theta_n: n must be >= 2");
  return euler_product(
      [n](std::uint64_t, long double x) {
        const long double a = x * x * (1.0L - std::pow(x, n - 1)) / (1.0L - x);
        return (1.0L + a) * (1.0L - x * x);
      },
      zeta(2, opts.tol / 8.0L), {2.0L, 3}, opts);
}

ErrBoundedReal theta_n(int n, long double tol) {
  EulerOptions opts;
  opts.tol = tol;
  return theta_n_eval(n, opts).value;
}

Sandwich theta_sandwich(int n) {
  if (n < 2) throw std::invalid_argument("theta_sandwich: n must be >= 2");
  const ErrBoundedReal th = theta();
  const ErrBoundedReal two_adic =
      ErrBoundedReal::exact(1.0L) -
      ErrBoundedReal::rounded(1.0L / (3.0L * std::ldexp(1.0L, n - 1)));
  const ErrBoundedReal one = ErrBoundedReal::exact(1.0L);
  auto odd_part = [&](int s) {
    // prod_{p >= 3} (1 - p^{-s})
    return reciprocal((one - ErrBoundedReal::exact(std::ldexp(1.0L, -s))) * zeta(s, 1e-14L));
  };
  return {th * two_adic * odd_part(n), th * two_adic * odd_part(n + 1)};
}

ErrBoundedReal rho() { return zeta(2, 1e-14L); }

Evaluation rho_n_eval(int n, const EulerOptions& opts) {
  if (n < 2) throw std::invalid_argument("rho_n: n must be >= 2");
  return euler_product(
      [n](std::uint64_t, long double x) {
        const long double b = x * x * (1.0L - std::pow(x, n - 1)) / (1.0L - x * x);
        return (1.0L + b) * (1.0L - x * x);
      },
      ErrBoundedReal::exact(1.0L), {1.0L, 3}, opts);
}

ErrBoundedReal rho_n(int n, long double tol) {
  EulerOptions opts;
  opts.tol = tol;
  return rho_n_eval(n, opts).value;
}

ErrBoundedReal density_cocyclic_limit() {
  return reciprocal(zeta(6, 1e-14L) * xi_inf(4, 1e-12L));
}

ErrBoundedReal density_squarefree_limit() { return reciprocal(xi_inf(3, 1e-12L)); }

Evaluation gekeler_cyclic(const EulerOptions& opts) {
  return euler_product(
      [](std::uint64_t, long double x) {
        return 1.0L - x * x * x * x / ((1.0L - x * x) * (1.0L - x));
      },
      ErrBoundedReal::exact(1.0L), {2.0L, 4}, opts);
}

Evaluation gekeler_squarefree(const EulerOptions& opts) {
  // Local factor is 1 - p^{-2} + O(p^{-3}); divide out (1 - p^{-2}).
  return euler_product(
      [](std::uint64_t, long double x) {
        const long double x2 = x * x;
        const long double f = 1.0L - x2 * (1.0L - x2 - x2 * x) / ((1.0L - x2) * (1.0L - x));
        return f / (1.0L - x2);
      },
      reciprocal(zeta(2, opts.tol / 8.0L)), {2.0L, 3}, opts);
}

Evaluation landau_prime_sum(const EulerOptions& opts) {
  require_tol(opts.tol, "landau_prime_sum");
  std::uint64_t cutoff = std::max<std::uint64_t>(opts.prime_cutoff, 100);
  CompensatedSum acc(8.0L * kEps);
  std::size_t done = 0;
  for (;;) {
    const auto primes = arith::primes_up_to(cutoff);
    for (; done < primes->size(); ++done) {
      const auto p = static_cast<long double>((*primes)[done]);
      acc.add(std::log(p) / (p * p - p + 1.0L));
    }
    // p^2 - p + 1 >= p^2 (1 - 1/P) for p > P, and
    // sum_{p > P} log p / p^2 <= 2 * 1.01624 / P by partial summation.
    const auto P = static_cast<long double>(cutoff);
    const long double B = 2.0L * 1.01624L / P / (1.0L - 1.0L / P);
    const ErrBoundedReal result = acc.result() + ErrBoundedReal{B / 2.0L, B / 2.0L * (1.0L + kEps)};
    if (result.err <= opts.tol) return {result, cutoff};
    if (cutoff >= opts.max_prime_cutoff) {
      throw PrecisionUnreachable("landau_prime_sum: tol not reached at prime cutoff " +
                                 std::to_string(cutoff));
    }
    cutoff = std::min(cutoff * 10, opts.max_prime_cutoff);
  }
}

}  // namespace latcensus::constants
