#pragma once

#include <cstdint>
#include <functional>

#include "latcensus/bounded_real.hpp"

namespace latcensus::constants {

inline constexpr long double kDefaultTol = 1e-10L;

// Euler-product truncation policy. If `tol` is not met at `prime_cutoff`
// the cutoff grows by 10x, up to `max_prime_cutoff`, before
// PrecisionUnreachable is thrown.
struct EulerOptions {
  long double tol = kDefaultTol;
  std::uint64_t prime_cutoff = 1'000'000;
  std::uint64_t max_prime_cutoff = 100'000'000;
};

struct Evaluation {
  ErrBoundedReal value;
  std::uint64_t prime_cutoff = 0;  // 0 for closed forms
};

/// Bound on the local factors beyond the cutoff:
/// |local(p) - 1| <= coeff * p^{-exponent} for every prime p > cutoff.
struct TailBound {
  long double coeff;
  unsigned exponent;  // >= 2
};

/// prefactor * prod_p local(p), truncated at the first cutoff where the
/// rigorously bounded tail and the accumulated rounding fit in opts.tol.
/// `local` receives x = 1/p as well as p and must be accurate to a few ulps.
Evaluation euler_product(const std::function<long double(std::uint64_t p, long double x)>& local,
                         const ErrBoundedReal& prefactor, TailBound tail,
                         const EulerOptions& opts = {});

// Riemann zeta at integer k >= 2: partial sum plus Euler-Maclaurin tail.
ErrBoundedReal zeta(int k, long double tol = kDefaultTol);
// zeta(k) - 1 without cancellation; suited to large k.
ErrBoundedReal zeta_minus_one(int k, long double tol);

// prod_{k=m}^{n} zeta(k)
ErrBoundedReal xi(int m, int n, long double tol = kDefaultTol);
// prod_{k>=m} zeta(k)
ErrBoundedReal xi_inf(int m, long double tol = kDefaultTol);

// zeta(2) zeta(3) / zeta(6), err <= 1e-12.
ErrBoundedReal theta();
// prod_p (1 + 1/(p^2 - p)) evaluated as an Euler product, for cross-checking.
Evaluation theta_euler_product(const EulerOptions& opts = {});

// prod_p (1 + (p^{n-1} - 1) / (p^{n+1} - p^n)), zeta(2)-accelerated.
Evaluation theta_n_eval(int n, const EulerOptions& opts = {});
ErrBoundedReal theta_n(int n, long double tol = kDefaultTol);

struct Sandwich {
  ErrBoundedReal lower;
  ErrBoundedReal upper;
};

/// Closed-form bracket around theta_n:
///   theta (1 - 1/(3 2^{n-1})) / ((1 - 2^{-n}) zeta(n))
///     <= theta_n <=
///   theta (1 - 1/(3 2^{n-1})) / ((1 - 2^{-(n+1)}) zeta(n+1))
/// The 2-free products are prod_{p>=3} (1 - p^{-s}) = 1 / ((1 - 2^{-s}) zeta(s)).
Sandwich theta_sandwich(int n);

// prod_p (1 + 1/(p^2 - 1)) = zeta(2).
ErrBoundedReal rho();
// (6/pi^2) prod_p (1 + (p^{n-1} - 1) / (p^{n+1} - p^{n-1})). The 6/pi^2
// prefactor is folded into the local factors as prod_p (1 - p^{-2}).
Evaluation rho_n_eval(int n, const EulerOptions& opts = {});
ErrBoundedReal rho_n(int n, long double tol = kDefaultTol);

// 1 / (zeta(6) Xi_4)
ErrBoundedReal density_cocyclic_limit();
// Closed form 1 / Xi_3.
ErrBoundedReal density_squarefree_limit();

// prod_p (1 - 1/((p^2 - 1) p (p - 1)))
Evaluation gekeler_cyclic(const EulerOptions& opts = {});
// prod_p (1 - (p^3 - p - 1)/((p^2 - 1) p^2 (p - 1)))
Evaluation gekeler_squarefree(const EulerOptions& opts = {});

// sum_p log p / (p^2 - p + 1), with the tail bounded through the Chebyshev
// estimate theta(x) < 1.01624 x.
Evaluation landau_prime_sum(const EulerOptions& opts = {});

}  // namespace latcensus::constants
