#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "latcensus/arith.hpp"
#include "latcensus/bounded_real.hpp"

namespace latcensus::groups {

// Exponent multiset of a p-group: (e_1, r_1), ..., (e_k, r_k) with
// e_1 > ... > e_k > 0 and every r_i > 0, i.e. prod_i (Z/p^{e_i})^{r_i}.
using StandardForm = std::vector<std::pair<unsigned, unsigned>>;

/// Finite abelian group by primary decomposition: each prime maps to the
/// partition of its exponent, parts in nonincreasing order.
class AbelianGroup {
 public:
  AbelianGroup() = default;  // trivial group
  // Throws std::invalid_argument for non-primes, zero or increasing parts.
  // Empty partitions are dropped.
  static AbelianGroup from_primary(std::map<std::uint64_t, std::vector<unsigned>> parts);
  // Z/d_1 x ... x Z/d_k for any positive d_i (need not form a chain).
  static AbelianGroup from_invariant_factors(const std::vector<mpz_class>& d);
  static AbelianGroup cyclic(std::uint64_t q);
  // (Z/q)^m
  static AbelianGroup homocyclic(std::uint64_t q, unsigned m);

  const std::map<std::uint64_t, std::vector<unsigned>>& primary() const { return parts_; }
  StandardForm standard_form(std::uint64_t p) const;

  mpz_class order() const;
  // Number of invariant factors = max over p of the partition length.
  unsigned rank() const;
  bool is_cyclic() const { return rank() <= 1; }
  // Increasing-divisibility chain d_1 | ... | d_k, all d_i >= 2.
  std::vector<mpz_class> invariant_factors() const;
  // Cyclic factors Z/p^e, one per part, in primary order.
  std::vector<std::uint64_t> cyclic_factors() const;

  friend AbelianGroup operator*(const AbelianGroup& a, const AbelianGroup& b);
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::map<std::uint64_t, std::vector<unsigned>> parts_;
};

// e.g. "Z/4 x Z/2 x Z/3", "1" for the trivial group
std::string to_string(const AbelianGroup& g);
// e.g. "2^[2,1] 3^[1]", "1" for the trivial group
std::string primary_string(const AbelianGroup& g);

// All partitions of k, parts nonincreasing, in lexicographic order.
std::vector<std::vector<unsigned>> partitions_of(unsigned k);

// Order of Aut for a p-group in standard form. Throws
// std::invalid_argument on a malformed form or composite p.
mpz_class aut_order_pgroup(std::uint64_t p, const StandardForm& form);
// Product over the p-parts.
mpz_class aut_order(const AbelianGroup& g);
// q^{m^2} prod_{p | q} prod_{s=1}^{m} (1 - p^{-s}) = #GL_m(Z/q)
mpz_class aut_order_qm(const arith::FactoredInt& q, unsigned m);
// Direct count of bijective endomorphisms. Throws CapExceeded for #G > cap.
std::uint64_t aut_order_bruteforce(const AbelianGroup& g, std::uint64_t cap = 4096);

// Groups of order n in lexicographic (prime, partition) order.
std::vector<AbelianGroup> groups_of_order(const arith::FactoredInt& n);

inline constexpr std::uint64_t kDefaultCensusCap = 1'000'000;

/// Every isomorphism class of order <= V, by order, then lexicographically.
/// Throws CapExceeded when V > cap.
void for_each_group(std::uint64_t V, const std::function<void(const AbelianGroup&)>& fn,
                    std::uint64_t cap = kDefaultCensusCap);
std::vector<AbelianGroup> enumerate_groups(std::uint64_t V, std::uint64_t cap = kDefaultCensusCap);

inline constexpr std::uint64_t kTupleGroupCap = 4096;

/// Number of n-tuples (g_1, ..., g_n) in G^n that generate G, by a
/// dynamic program over the subgroups generated by prefixes. The cost is
/// governed by #G (times the number of subgroups), not by #G^n; throws
/// CapExceeded for #G > cap.
mpz_class generating_tuples_count(const AbelianGroup& g, unsigned n,
                                  std::uint64_t cap = kTupleGroupCap);
// generating_tuples_count / aut_order; Aut(G) acts freely on generating
// tuples, so the division is exact (std::logic_error otherwise).
mpz_class A_n_G(const AbelianGroup& g, unsigned n, std::uint64_t cap = kTupleGroupCap);

// generating fraction >= 1 - #G^{-k}
bool pak_check(const AbelianGroup& g, unsigned n, unsigned k, std::uint64_t cap = kTupleGroupCap);
// n > (k + 1) log_base #G + 2
bool pak_hypothesis(const AbelianGroup& g, unsigned n, unsigned k, long double base = 2.0L);

struct Predicate {
  enum class Kind { all, cyclic, squarefree_order, rank_at_most };
  Kind kind = Kind::all;
  unsigned r = 0;  // for rank_at_most

  bool holds(const AbelianGroup& g) const;
  std::string name() const;
  // Parses "all", "cyclic", "squarefree", "rank<=R".
  static std::optional<Predicate> parse(const std::string& s);
};

/// Cohen-Lenstra mass sum_{#G <= V, pred(G)} 1 / #Aut(G). Exact (via the
/// group census) for V <= arith::kExactSumLimit; above, error-bounded
/// floating point from per-prime-power partition masses.
arith::RationalSum cl_mass(std::uint64_t V, const Predicate& pred);

struct MassAccumulator {
  std::uint64_t V = 0;
  arith::RationalSum total;
  std::vector<std::pair<Predicate, arith::RationalSum>> predicates;
};

MassAccumulator cl_total_mass(std::uint64_t V, const std::vector<Predicate>& preds = {});
arith::RationalSum cl_predicate_mass(std::uint64_t V, const Predicate& pred);

// P(p, r) = p^{-r^2} prod_{i>=1}(1 - p^{-i}) / prod_{i=1}^{r} (1 - p^{-i})^2
ErrBoundedReal rank_prob(std::uint64_t p, unsigned r, long double tol = 1e-12L);

// Xi_2^{-1} prod_p sum_{k=0}^{r} p^{-k^2} (1 - p^{-1}) / prod_{i=1}^{k} (1 - p^{-i})^2
ErrBoundedReal delta_rank_at_most(unsigned r, long double tol = 1e-10L);
// 1 - exp(-8 (zeta(r^2) - 1)), r >= 2
ErrBoundedReal delta_rank_at_least_bound(unsigned r);

// 1 / Xi_2 and 1 / (zeta(2) Xi_2)
ErrBoundedReal uniform_density_cyclic();
ErrBoundedReal uniform_density_squarefree();

/// Census companion of the uniform densities: among isomorphism classes
/// of order <= V, the fraction that are cyclic (V / sum a(n)) and the
/// fraction of squarefree order.
struct UniformCensus {
  std::uint64_t V = 0;
  mpz_class classes;
  mpz_class cyclic;
  mpz_class squarefree;
};
UniformCensus uniform_census(std::uint64_t V);

}  // namespace latcensus::groups
