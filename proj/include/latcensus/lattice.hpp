#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "latcensus/arith.hpp"
#include "latcensus/rng.hpp"

namespace latcensus::lattice {

using Matrix = std::vector<std::vector<std::int64_t>>;

/// Canonical row basis of a full-rank sublattice of Z^n: upper triangular,
/// positive pivots, and 0 <= h[i][j] < h[j][j] above each pivot. Two
/// values compare equal exactly when they span the same lattice.
class HnfBasis {
 public:
  // The n x n identity, i.e. Z^n itself.
  static HnfBasis identity(unsigned n);
  // Checks every invariant; throws std::invalid_argument on violation.
  static HnfBasis from_rows(const Matrix& rows);

  unsigned n() const { return n_; }
  std::int64_t at(unsigned i, unsigned j) const { return h_[i * n_ + j]; }
  Matrix rows() const;
  // prod of pivots
  std::uint64_t index() const;

  friend bool operator==(const HnfBasis&, const HnfBasis&) = default;
  friend auto operator<=>(const HnfBasis&, const HnfBasis&) = default;

 private:
  friend class SublatticeStream;
  friend HnfBasis hnf_from_mpz(std::vector<std::vector<mpz_class>> a);

  HnfBasis(unsigned n, std::vector<std::int64_t> h) : n_(n), h_(std::move(h)) {}

  unsigned n_ = 0;
  std::vector<std::int64_t> h_;
};

/// Hermite normal form of the row span of a square nonsingular matrix.
/// Throws SingularInput when det = 0, std::overflow_error when an HNF entry
/// does not fit in 64 bits.
HnfBasis hnf_canonicalize(const Matrix& rows);
HnfBasis hnf_from_mpz(std::vector<std::vector<mpz_class>> rows);

/// Abelian group Z^n/L as d_1 | d_2 | ... | d_k with every d_i >= 2.
/// Stored in increasing-divisibility order; reverse for a q_{i+1} | q_i chain.
struct InvariantFactors {
  std::vector<mpz_class> chain;

  unsigned rank() const { return static_cast<unsigned>(chain.size()); }
  mpz_class order() const;
  bool is_cyclic() const { return chain.size() <= 1; }
  friend bool operator==(const InvariantFactors&, const InvariantFactors&) = default;
};

struct CongruenceVector {
  std::uint64_t q = 1;
  std::vector<std::uint64_t> a;  // residues in [0, q)
};

// Number of HNF matrices of determinant q in dimension n.
mpz_class count_sublattices(unsigned n, const arith::FactoredInt& q);

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

/// All sublattices of Z^n of index q, each exactly once: ordered diagonal
/// factorizations in lexicographic order, and for each diagonal an odometer
/// over the above-diagonal entries (row-major, last entry fastest).
/// The constructor throws CapExceeded when count_sublattices(n, q) > cap.
class SublatticeStream {
 public:
  SublatticeStream(unsigned n, std::uint64_t q, std::uint64_t cap = kDefaultEnumerationCap);

  // nullptr once exhausted. The pointee is overwritten by the next call.
  const HnfBasis* next();
  std::uint64_t yielded() const { return yielded_; }

 private:
  bool advance_diagonal();
  bool advance_entries();
  void load_diagonal();

  unsigned n_;
  std::uint64_t q_;
  std::vector<std::uint64_t> diag_;
  std::vector<std::uint64_t> divisors_;
  HnfBasis current_;
  bool started_ = false;
  bool done_ = false;
  std::uint64_t yielded_ = 0;
};

void for_each_sublattice(unsigned n, std::uint64_t q, const std::function<void(const HnfBasis&)>& fn,
                         std::uint64_t cap = kDefaultEnumerationCap);
std::vector<HnfBasis> enumerate_sublattices(unsigned n, std::uint64_t q,
                                            std::uint64_t cap = kDefaultEnumerationCap);

InvariantFactors smith_invariants(const HnfBasis& b);
bool is_cocyclic(const HnfBasis& b);
unsigned quotient_rank(const HnfBasis& b);

bool is_primitive(const CongruenceVector& v);
// Throws std::invalid_argument if the moduli or lengths differ. O(q n).
bool are_equivalent(const CongruenceVector& u, const CongruenceVector& v);

/// L = {x in Z^n : a . x = 0 mod q}. Requires v.a.size() == n and v
/// primitive mod q (NotPrimitive otherwise).
HnfBasis lattice_from_congruence(const CongruenceVector& v, unsigned n);

/// Uniform over the co-cyclic lattices of index q: draws residue vectors
/// until one is primitive; each lattice is hit by exactly phi(q) of them.
HnfBasis sample_cocyclic(unsigned n, std::uint64_t q, std::uint64_t seed);
HnfBasis sample_cocyclic(unsigned n, std::uint64_t q, Rng& rng);

}  // namespace latcensus::lattice
