#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "latcensus/arith.hpp"
#include "latcensus/bounded_real.hpp"
#include "latcensus/lattice.hpp"

namespace latcensus::counting {

// A_n(q) = prod_{p^k || q} p^{(k-1)(n-1)} (p^n - 1) / (p - 1): classes of
// primitive vectors mod q up to unit scaling, i.e. co-cyclic lattices of
// index q in Z^n.
mpz_class A_n_formula(unsigned n, const arith::FactoredInt& q);

inline constexpr std::uint64_t kBruteforceCap = 1'000'000'000;

/// Counts primitive vectors mod q that are the lexicographically smallest
/// element of their orbit under multiplication by units. Independent of the
/// closed form. Throws CapExceeded when q^n > cap.
mpz_class A_n_bruteforce(unsigned n, std::uint64_t q, std::uint64_t cap = kBruteforceCap);

// sum_{q <= V} A_n(q)
mpz_class N_n(unsigned n, std::uint64_t V, unsigned threads = 0);
// same, restricted to squarefree q
mpz_class N_sharp(unsigned n, std::uint64_t V, unsigned threads = 0);
// sum_{q <= V} count_sublattices(n, q)
mpz_class total_count(unsigned n, std::uint64_t V, unsigned threads = 0);

// Leading terms only: theta_n V^n / n, rho_n V^n / n and Xi_{2,n} V^n / n.
ErrBoundedReal N_n_asymptotic(unsigned n, std::uint64_t V, long double tol = 1e-10L);
ErrBoundedReal N_sharp_asymptotic(unsigned n, std::uint64_t V, long double tol = 1e-10L);
ErrBoundedReal total_asymptotic(unsigned n, std::uint64_t V);

// sum_{d <= V} f_n(d) d^{n-1} sum_{k <= V/d} k^{n-1}, which equals N_n(V).
mpq_class N_n_divisor_sum(unsigned n, std::uint64_t V);

/// Brute-force census of one index: every sublattice of index q,
/// classified by the rank of Z^n / L.
struct IndexCensus {
  std::uint64_t q = 0;
  std::uint64_t total = 0;
  std::vector<std::uint64_t> by_rank;  // size n + 1
};

// Throws CapExceeded when total_count(n, V) > cap.
std::vector<IndexCensus> census_by_index(unsigned n, std::uint64_t V,
                                         std::uint64_t cap = lattice::kDefaultEnumerationCap,
                                         unsigned threads = 0);
std::map<unsigned, mpz_class> counts_by_rank(unsigned n, std::uint64_t V,
                                             std::uint64_t cap = lattice::kDefaultEnumerationCap,
                                             unsigned threads = 0);
mpz_class N_nm_bruteforce(unsigned n, unsigned m, std::uint64_t V,
                          std::uint64_t cap = lattice::kDefaultEnumerationCap);

struct DensityOptions {
  bool bruteforce = false;  // also run the enumeration census (fills the oracle fields)
  long double tol = 1e-10L;
  std::uint64_t cap = lattice::kDefaultEnumerationCap;
  unsigned threads = 0;
};

/// Exact counts of lattices of index <= V next to their leading-order
/// predictions. Predictions omit all lower-order terms.
struct DensityReport {
  unsigned n = 0;
  std::uint64_t V = 0;
  mpz_class count_cocyclic;
  mpz_class count_squarefree;
  mpz_class count_total;
  std::optional<mpz_class> oracle_cocyclic;
  std::optional<mpz_class> oracle_squarefree;
  std::optional<mpz_class> oracle_total;
  std::map<unsigned, mpz_class> counts_by_rank;  // filled with the oracle

  ErrBoundedReal predicted_cocyclic;
  ErrBoundedReal predicted_squarefree;
  ErrBoundedReal predicted_total;

  // count / count_total
  ErrBoundedReal cocyclic_fraction;
  ErrBoundedReal squarefree_fraction;
  // count / leading-order prediction
  ErrBoundedReal cocyclic_ratio;
  ErrBoundedReal squarefree_ratio;
  ErrBoundedReal total_ratio;
  // theta_n / Xi_{2,n} and rho_n / Xi_{2,n}
  ErrBoundedReal limit_cocyclic_fraction;
  ErrBoundedReal limit_squarefree_fraction;

  bool oracle_agrees() const;
};

// n >= 2, V >= 1.
DensityReport density_report(unsigned n, std::uint64_t V, const DensityOptions& options = {});

}  // namespace latcensus::counting
