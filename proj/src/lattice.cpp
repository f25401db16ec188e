#include "latcensus/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "latcensus/errors.hpp"

namespace latcensus::lattice {

namespace {

using MpzMatrix = std::vector<std::vector<mpz_class>>;

MpzMatrix to_mpz(const Matrix& rows) {
  const std::size_t n = rows.size();
  MpzMatrix a(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = static_cast<long>(rows[i][j]);
    }
  }
  return a;
}

void sub_multiple(std::vector<mpz_class>& row, const std::vector<mpz_class>& pivot_row,
                  const mpz_class& m, std::size_t from) {
  for (std::size_t k = from; k < row.size(); ++k) row[k] -= m * pivot_row[k];
}

std::vector<std::uint64_t> divisors_of(std::uint64_t q) {
  std::vector<std::uint64_t> d{1};
  const auto f = arith::factorize(q);
  for (const auto& pp : f.factors()) {
    const std::size_t base = d.size();
    std::uint64_t pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) d.push_back(d[i] * pk);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

HnfBasis HnfBasis::identity(unsigned n) {
  std::vector<std::int64_t> h(static_cast<std::size_t>(n) * n, 0);
  for (unsigned i = 0; i < n; ++i) h[i * n + i] = 1;
  return HnfBasis(n, std::move(h));
}

HnfBasis HnfBasis::from_rows(const Matrix& rows) {
  const auto n = static_cast<unsigned>(rows.size());
  if (n == 0) throw std::invalid_argument("HnfBasis: dimension must be >= 1");
  std::vector<std::int64_t> h;
  h.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("HnfBasis: matrix must be square");
    h.insert(h.end(), r.begin(), r.end());
  }
  for (unsigned i = 0; i < n; ++i) {
    if (h[i * n + i] < 1) throw std::invalid_argument("HnfBasis: pivots must be positive");
    for (unsigned j = 0; j < n; ++j) {
      const std::int64_t x = h[i * n + j];
      if (i > j && x != 0) throw std::invalid_argument("HnfBasis: not upper triangular");
      if (i < j && (x < 0 || x >= h[j * n + j])) {
        throw std::invalid_argument("HnfBasis: entry above pivot not reduced");
      }
    }
  }
  return HnfBasis(n, std::move(h));
}

Matrix HnfBasis::rows() const {
  Matrix m(n_, std::vector<std::int64_t>(n_));
  for (unsigned i = 0; i < n_; ++i) {
    for (unsigned j = 0; j < n_; ++j) m[i][j] = at(i, j);
  }
  return m;
}

std::uint64_t HnfBasis::index() const {
  std::uint64_t d = 1;
  for (unsigned i = 0; i < n_; ++i) d *= static_cast<std::uint64_t>(at(i, i));
  return d;
}

HnfBasis hnf_from_mpz(MpzMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("hnf: dimension must be >= 1");
  for (const auto& r : a) {
    if (r.size() != n) throw std::invalid_argument("hnf: matrix must be square");
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t r = j; r < n; ++r) {
        if (sgn(a[r][j]) != 0 && (best == n || abs(a[r][j]) < abs(a[best][j]))) best = r;
      }
      if (best == n) throw SingularInput("hnf: matrix is singular");
      std::swap(a[j], a[best]);
      bool clear = true;
      for (std::size_t r = j + 1; r < n; ++r) {
        if (sgn(a[r][j]) == 0) continue;
        mpz_class m;
        mpz_tdiv_q(m.get_mpz_t(), a[r][j].get_mpz_t(), a[j][j].get_mpz_t());
        sub_multiple(a[r], a[j], m, j);
        if (sgn(a[r][j]) != 0) clear = false;
      }
      if (clear) break;
    }
    if (sgn(a[j][j]) < 0) {
      for (auto& x : a[j]) x = -x;
    }
  }
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      mpz_class m;
      mpz_fdiv_q(m.get_mpz_t(), a[i][j].get_mpz_t(), a[j][j].get_mpz_t());
      if (sgn(m) != 0) sub_multiple(a[i], a[j], m, j);
    }
  }
  std::vector<std::int64_t> h;
  h.reserve(n * n);
  for (const auto& r : a) {
    for (const auto& x : r) {
      if (!x.fits_slong_p()) throw std::overflow_error("hnf: entry exceeds 64 bits");
      h.push_back(x.get_si());
    }
  }
  return HnfBasis(static_cast<unsigned>(n), std::move(h));
}

HnfBasis hnf_canonicalize(const Matrix& rows) { return hnf_from_mpz(to_mpz(rows)); }

mpz_class InvariantFactors::order() const {
  mpz_class r = 1;
  for (const auto& d : chain) r *= d;
  return r;
}

mpz_class count_sublattices(unsigned n, const arith::FactoredInt& q) {
  if (n == 0) throw std::invalid_argument("count_sublattices: n must be >= 1");
  mpz_class total = 1;
  for (const auto& pp : q.factors()) {
    // c[k] = c_m(p^k), built up from c_1 = 1 via
    // c_m(p^k) = sum_j p^{j(m-1)} c_{m-1}(p^{k-j}).
    std::vector<mpz_class> c(pp.exponent + 1, 1);
    for (unsigned m = 2; m <= n; ++m) {
      std::vector<mpz_class> next(pp.exponent + 1, 0);
      for (unsigned k = 0; k <= pp.exponent; ++k) {
        for (unsigned j = 0; j <= k; ++j) next[k] += arith::ipow(pp.prime, j * (m - 1)) * c[k - j];
      }
      c = std::move(next);
    }
    total *= c[pp.exponent];
  }
  return total;
}

SublatticeStream::SublatticeStream(unsigned n, std::uint64_t q, std::uint64_t cap)
    : n_(n), q_(q), current_(HnfBasis::identity(n == 0 ? 1 : n)) {
  if (n == 0) throw std::invalid_argument("enumerate_sublattices: n must be >= 1");
  if (q == 0) throw std::invalid_argument("enumerate_sublattices: q must be >= 1");
  const mpz_class count = count_sublattices(n, arith::factorize(q));
  if (count > mpz_class(std::to_string(cap))) {
    throw CapExceeded("enumerate_sublattices: " + count.get_str() + " lattices of index " +
                      std::to_string(q) + " in dimension " + std::to_string(n) +
                      " exceed cap " + std::to_string(cap));
  }
  divisors_ = divisors_of(q);
  diag_.assign(n, 1);
  diag_[n - 1] = q;
}

void SublatticeStream::load_diagonal() {
  std::fill(current_.h_.begin(), current_.h_.end(), 0);
  for (unsigned i = 0; i < n_; ++i) current_.h_[i * n_ + i] = static_cast<std::int64_t>(diag_[i]);
}

bool SublatticeStream::advance_entries() {
  // Odometer over h[i][j], i < j, with h[i][j] in [0, diag[j]).
  for (unsigned i = n_ - 1; i-- > 0;) {
    for (unsigned j = n_ - 1; j > i; --j) {
      std::int64_t& x = current_.h_[i * n_ + j];
      if (static_cast<std::uint64_t>(x + 1) < diag_[j]) {
        ++x;
        return true;
      }
      x = 0;
    }
  }
  return false;
}

bool SublatticeStream::advance_diagonal() {
  // Next ordered factorization of q in lexicographic order. The last
  // component is determined by the others.
  if (n_ == 1) return false;
  std::vector<std::uint64_t> rest(n_);  // rest[i] = q / (d_0 ... d_{i-1})
  rest[0] = q_;
  for (unsigned i = 1; i < n_; ++i) rest[i] = rest[i - 1] / diag_[i - 1];
  for (unsigned i = n_ - 1; i-- > 0;) {
    auto it = std::upper_bound(divisors_.begin(), divisors_.end(), diag_[i]);
    for (; it != divisors_.end() && *it <= rest[i]; ++it) {
      if (rest[i] % *it == 0) break;
    }
    if (it == divisors_.end() || *it > rest[i]) continue;
    diag_[i] = *it;
    std::uint64_t r = rest[i] / *it;
    for (unsigned k = i + 1; k + 1 < n_; ++k) diag_[k] = 1;
    diag_[n_ - 1] = r;
    return true;
  }
  return false;
}

const HnfBasis* SublatticeStream::next() {
  if (done_) return nullptr;
  if (!started_) {
    started_ = true;
    load_diagonal();
  } else if (!advance_entries()) {
    if (!advance_diagonal()) {
      done_ = true;
      return nullptr;
    }
    load_diagonal();
  }
  ++yielded_;
  return &current_;
}

void for_each_sublattice(unsigned n, std::uint64_t q, const std::function<void(const HnfBasis&)>& fn,
                         std::uint64_t cap) {
  SublatticeStream s(n, q, cap);
  while (const HnfBasis* b = s.next()) fn(*b);
}

std::vector<HnfBasis> enumerate_sublattices(unsigned n, std::uint64_t q, std::uint64_t cap) {
  std::vector<HnfBasis> out;
  for_each_sublattice(n, q, [&](const HnfBasis& b) { out.push_back(b); }, cap);
  return out;
}

InvariantFactors smith_invariants(const HnfBasis& b) {
  const unsigned n = b.n();
  MpzMatrix a(n, std::vector<mpz_class>(n));
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) a[i][j] = static_cast<long>(b.at(i, j));
  }
  for (unsigned t = 0; t < n; ++t) {
    for (;;) {
      unsigned bi = n, bj = n;
      for (unsigned i = t; i < n; ++i) {
        for (unsigned j = t; j < n; ++j) {
          if (sgn(a[i][j]) != 0 && (bi == n || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == n) throw SingularInput("smith_invariants: singular basis");
      std::swap(a[t], a[bi]);
      for (unsigned i = 0; i < n; ++i) std::swap(a[i][t], a[i][bj]);

      bool clean = true;
      mpz_class m;
      for (unsigned i = t + 1; i < n; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        mpz_tdiv_q(m.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (unsigned j = t; j < n; ++j) a[i][j] -= m * a[t][j];
        if (sgn(a[i][t]) != 0) clean = false;
      }
      for (unsigned j = t + 1; j < n; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        mpz_tdiv_q(m.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (unsigned i = t; i < n; ++i) a[i][j] -= m * a[i][t];
        if (sgn(a[t][j]) != 0) clean = false;
      }
      if (!clean) continue;
      // The pivot must divide the rest of the block; otherwise fold in an
      // offending row and reduce again.
      unsigned bad = n;
      for (unsigned i = t + 1; i < n && bad == n; ++i) {
        for (unsigned j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
        }
      }
      if (bad == n) break;
      for (unsigned j = t; j < n; ++j) a[t][j] += a[bad][j];
    }
  }
  InvariantFactors f;
  for (unsigned t = 0; t < n; ++t) {
    mpz_class d = abs(a[t][t]);
    if (d != 1) f.chain.push_back(d);
  }
  std::sort(f.chain.begin(), f.chain.end());
  return f;
}

bool is_cocyclic(const HnfBasis& b) { return quotient_rank(b) <= 1; }

unsigned quotient_rank(const HnfBasis& b) { return smith_invariants(b).rank(); }

bool is_primitive(const CongruenceVector& v) {
  if (v.q == 0) throw std::invalid_argument("congruence modulus must be >= 1");
  std::uint64_t g = v.q;
  for (const auto x : v.a) g = std::gcd(g, x % v.q);
  return g == 1;
}

bool are_equivalent(const CongruenceVector& u, const CongruenceVector& v) {
  if (u.q != v.q) throw std::invalid_argument("are_equivalent: moduli differ");
  if (u.a.size() != v.a.size()) throw std::invalid_argument("are_equivalent: lengths differ");
  if (u.q == 0) throw std::invalid_argument("congruence modulus must be >= 1");
  const std::uint64_t q = u.q;
  for (std::uint64_t lambda = 1; lambda <= q; ++lambda) {
    if (std::gcd(lambda, q) != 1) continue;
    bool match = true;
    for (std::size_t i = 0; i < u.a.size() && match; ++i) {
      const auto prod = static_cast<unsigned __int128>(lambda) * (v.a[i] % q) % q;
      match = static_cast<std::uint64_t>(prod) == u.a[i] % q;
    }
    if (match) return true;
  }
  return false;
}

HnfBasis lattice_from_congruence(const CongruenceVector& v, unsigned n) {
  if (n == 0) throw std::invalid_argument("lattice_from_congruence: n must be >= 1");
  if (v.a.size() != n) throw std::invalid_argument("lattice_from_congruence: vector length != n");
  if (!is_primitive(v)) throw NotPrimitive("lattice_from_congruence: vector not primitive mod q");
  if (v.q == 1) return HnfBasis::identity(n);

  // Unimodular U with a U = (g, 0, ..., 0) by column-wise extended gcd.
  // Then a.x = 0 mod q  iff  y = U^{-1} x has q | y_1, since g is a unit
  // mod q. So L is spanned by q U e_1, U e_2, ..., U e_n.
  std::vector<mpz_class> w(n);
  for (unsigned i = 0; i < n; ++i) w[i] = static_cast<unsigned long>(v.a[i] % v.q);
  MpzMatrix u(n, std::vector<mpz_class>(n, 0));
  for (unsigned i = 0; i < n; ++i) u[i][i] = 1;
  for (unsigned j = 1; j < n; ++j) {
    if (sgn(w[j]) == 0) continue;
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), w[0].get_mpz_t(), w[j].get_mpz_t());
    const mpz_class c0 = -w[j] / g;
    const mpz_class cj = w[0] / g;
    for (unsigned i = 0; i < n; ++i) {
      const mpz_class x0 = u[i][0];
      const mpz_class xj = u[i][j];
      u[i][0] = s * x0 + t * xj;
      u[i][j] = c0 * x0 + cj * xj;
    }
    w[0] = g;
    w[j] = 0;
  }
  MpzMatrix rows(n, std::vector<mpz_class>(n));
  for (unsigned k = 0; k < n; ++k) {
    for (unsigned i = 0; i < n; ++i) rows[k][i] = u[i][k];
  }
  for (auto& x : rows[0]) x *= static_cast<unsigned long>(v.q);
  return hnf_from_mpz(std::move(rows));
}

HnfBasis sample_cocyclic(unsigned n, std::uint64_t q, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_cocyclic: n must be >= 1");
  if (q == 0) throw std::invalid_argument("sample_cocyclic: q must be >= 1");
  CongruenceVector v{q, std::vector<std::uint64_t>(n)};
  do {
    for (auto& x : v.a) x = rng.uniform_below(q);
  } while (!is_primitive(v));
  return lattice_from_congruence(v, n);
}

HnfBasis sample_cocyclic(unsigned n, std::uint64_t q, std::uint64_t seed) {
  Rng rng(seed);
  return sample_cocyclic(n, q, rng);
}

}  // namespace latcensus::lattice
