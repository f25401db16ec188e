#include "latcensus/counting.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "latcensus/constants.hpp"
#include "latcensus/errors.hpp"
#include "latcensus/parallel.hpp"

namespace latcensus::counting {

namespace {

void require_dim(unsigned n, unsigned min, const char* what) {
  if (n < min) {
    throw std::invalid_argument(std::string(what) + ": n must be >= " + std::to_string(min));
  }
}

// Exact integer sum of term(q, factorization) over 1 <= q <= V.
template <class Term>
mpz_class sum_over_index(std::uint64_t V, unsigned threads, Term term) {
  if (V == 0) return 0;
  const auto sieve = arith::sieve_for(V);
  return partitioned_sum<mpz_class>(1, V, threads, [&](std::uint64_t a, std::uint64_t b) {
    mpz_class s = 0;
    for (std::uint64_t q = a; q <= b; ++q) term(s, arith::factorize(q, *sieve));
    return s;
  });
}

ErrBoundedReal leading_term(const ErrBoundedReal& c, unsigned n, std::uint64_t V) {
  return c * ErrBoundedReal::from_integer(arith::ipow(V, n)) / ErrBoundedReal::exact(n);
}

ErrBoundedReal ratio(const mpz_class& num, const mpz_class& den) {
  return ErrBoundedReal::from_rational(mpq_class(num, den));
}

struct BruteState {
  std::uint64_t q;
  unsigned n;
};

// Number of canonical primitive completions of a prefix whose stabilizer
// (units fixing the prefix) is `stab` and whose gcd with q is g.
std::uint64_t canonical_count(const BruteState& st, unsigned j, const std::vector<std::uint64_t>& stab,
                              std::uint64_t g) {
  const std::uint64_t q = st.q;
  if (j == st.n) return g == 1 ? 1 : 0;
  if (stab.size() == 1 && g == 1) {
    // Only lambda = 1 is left, so every completion is canonical.
    std::uint64_t r = 1;
    for (unsigned k = j; k < st.n; ++k) r *= q;
    return r;
  }
  std::uint64_t total = 0;
  std::vector<std::uint64_t> next;
  next.reserve(stab.size());
  for (std::uint64_t x = 0; x < q; ++x) {
    bool canonical = true;
    next.clear();
    for (const std::uint64_t lambda : stab) {
      const std::uint64_t y = lambda * x % q;
      if (y < x) {
        canonical = false;
        break;
      }
      if (y == x) next.push_back(lambda);
    }
    if (!canonical) continue;
    total += canonical_count(st, j + 1, next, std::gcd(g, x));
  }
  return total;
}

}  // namespace

mpz_class A_n_formula(unsigned n, const arith::FactoredInt& q) {
  require_dim(n, 1, "A_n_formula");
  mpz_class r = 1;
  for (const auto& pp : q.factors()) {
    const mpz_class pn = arith::ipow(pp.prime, n);
    r *= arith::ipow(pp.prime, (pp.exponent - 1) * (n - 1)) * ((pn - 1) / (pp.prime - 1));
  }
  return r;
}

mpz_class A_n_bruteforce(unsigned n, std::uint64_t q, std::uint64_t cap) {
  require_dim(n, 1, "A_n_bruteforce");
  if (q == 0) throw std::invalid_argument("A_n_bruteforce: q must be >= 1");
  if (arith::ipow(q, n) > mpz_class(std::to_string(cap))) {
    throw CapExceeded("A_n_bruteforce: q^n exceeds cap " + std::to_string(cap));
  }
  if (q > (1ull << 32)) throw CapExceeded("A_n_bruteforce: q too large");
  if (q == 1) return 1;
  std::vector<std::uint64_t> units;
  for (std::uint64_t l = 1; l < q; ++l) {
    if (std::gcd(l, q) == 1) units.push_back(l);
  }
  const std::uint64_t c = canonical_count({q, n}, 0, units, q);
  return mpz_class(std::to_string(c));
}

mpz_class N_n(unsigned n, std::uint64_t V, unsigned threads) {
  require_dim(n, 1, "N_n");
  return sum_over_index(V, threads, [n](mpz_class& s, const arith::FactoredInt& f) {
    s += A_n_formula(n, f);
  });
}

mpz_class N_sharp(unsigned n, std::uint64_t V, unsigned threads) {
  require_dim(n, 1, "N_sharp");
  return sum_over_index(V, threads, [n](mpz_class& s, const arith::FactoredInt& f) {
    if (arith::is_squarefree(f)) s += A_n_formula(n, f);
  });
}

mpz_class total_count(unsigned n, std::uint64_t V, unsigned threads) {
  require_dim(n, 1, "total_count");
  return sum_over_index(V, threads, [n](mpz_class& s, const arith::FactoredInt& f) {
    s += lattice::count_sublattices(n, f);
  });
}

ErrBoundedReal N_n_asymptotic(unsigned n, std::uint64_t V, long double tol) {
  require_dim(n, 2, "N_n_asymptotic");
  return leading_term(constants::theta_n(static_cast<int>(n), tol), n, V);
}

ErrBoundedReal N_sharp_asymptotic(unsigned n, std::uint64_t V, long double tol) {
  require_dim(n, 2, "N_sharp_asymptotic");
  return leading_term(constants::rho_n(static_cast<int>(n), tol), n, V);
}

ErrBoundedReal total_asymptotic(unsigned n, std::uint64_t V) {
  require_dim(n, 2, "total_asymptotic");
  return leading_term(constants::xi(2, static_cast<int>(n)), n, V);
}

mpq_class N_n_divisor_sum(unsigned n, std::uint64_t V) {
  require_dim(n, 2, "N_n_divisor_sum");
  const auto sieve = arith::sieve_for(V);
  // power_sums[m] = sum_{k <= m} k^{n-1}
  std::vector<mpz_class> power_sums(V + 1, 0);
  for (std::uint64_t k = 1; k <= V; ++k) power_sums[k] = power_sums[k - 1] + arith::ipow(k, n - 1);
  mpq_class s = 0;
  for (std::uint64_t d = 1; d <= V; ++d) {
    const auto f = arith::factorize(d, *sieve);
    if (!arith::is_squarefree(f)) continue;
    s += arith::f_n(n, f) * mpq_class(arith::ipow(d, n - 1) * power_sums[V / d]);
  }
  s.canonicalize();
  return s;
}

std::vector<IndexCensus> census_by_index(unsigned n, std::uint64_t V, std::uint64_t cap,
                                         unsigned threads) {
  require_dim(n, 1, "census_by_index");
  const mpz_class total = total_count(n, V, 1);
  if (total > mpz_class(std::to_string(cap))) {
    throw CapExceeded("census: " + total.get_str() + " lattices of index <= " + std::to_string(V) +
                      " exceed cap " + std::to_string(cap));
  }
  std::vector<IndexCensus> out(V);
  struct Done {
    Done& operator+=(const Done&) { return *this; }
  };
  partitioned_sum<Done>(1, V, threads, [&](std::uint64_t a, std::uint64_t b) {
    for (std::uint64_t q = a; q <= b; ++q) {
      IndexCensus& c = out[q - 1];
      c.q = q;
      c.by_rank.assign(n + 1, 0);
      lattice::for_each_sublattice(n, q, [&](const lattice::HnfBasis& h) {
        ++c.total;
        ++c.by_rank[lattice::quotient_rank(h)];
      }, cap);
    }
    return Done{};
  });
  return out;
}

std::map<unsigned, mpz_class> counts_by_rank(unsigned n, std::uint64_t V, std::uint64_t cap,
                                             unsigned threads) {
  std::map<unsigned, mpz_class> out;
  for (unsigned m = 0; m <= n; ++m) out[m] = 0;
  for (const auto& c : census_by_index(n, V, cap, threads)) {
    for (unsigned m = 0; m <= n; ++m) out[m] += static_cast<unsigned long>(c.by_rank[m]);
  }
  return out;
}

mpz_class N_nm_bruteforce(unsigned n, unsigned m, std::uint64_t V, std::uint64_t cap) {
  if (m > n) return 0;
  return counts_by_rank(n, V, cap, 1)[m];
}

bool DensityReport::oracle_agrees() const {
  if (oracle_cocyclic && *oracle_cocyclic != count_cocyclic) return false;
  if (oracle_squarefree && *oracle_squarefree != count_squarefree) return false;
  if (oracle_total && *oracle_total != count_total) return false;
  return true;
}

DensityReport density_report(unsigned n, std::uint64_t V, const DensityOptions& options) {
  require_dim(n, 2, "density_report");
  if (V == 0) throw std::invalid_argument("density_report: V must be >= 1");
  DensityReport r;
  r.n = n;
  r.V = V;
  r.count_cocyclic = N_n(n, V, options.threads);
  r.count_squarefree = N_sharp(n, V, options.threads);
  r.count_total = total_count(n, V, options.threads);

  if (options.bruteforce) {
    const auto census = census_by_index(n, V, options.cap, options.threads);
    const auto sieve = arith::sieve_for(V);
    mpz_class cyc = 0, sf = 0, tot = 0;
    for (unsigned m = 0; m <= n; ++m) r.counts_by_rank[m] = 0;
    for (const auto& c : census) {
      tot += static_cast<unsigned long>(c.total);
      cyc += static_cast<unsigned long>(c.by_rank[0] + c.by_rank[1]);
      if (arith::is_squarefree(arith::factorize(c.q, *sieve))) {
        sf += static_cast<unsigned long>(c.total);
      }
      for (unsigned m = 0; m <= n; ++m) r.counts_by_rank[m] += static_cast<unsigned long>(c.by_rank[m]);
    }
    r.oracle_cocyclic = cyc;
    r.oracle_squarefree = sf;
    r.oracle_total = tot;
  }

  const auto ni = static_cast<int>(n);
  const ErrBoundedReal th = constants::theta_n(ni, options.tol);
  const ErrBoundedReal rh = constants::rho_n(ni, options.tol);
  const ErrBoundedReal xi = constants::xi(2, ni, options.tol);
  r.predicted_cocyclic = leading_term(th, n, V);
  r.predicted_squarefree = leading_term(rh, n, V);
  r.predicted_total = leading_term(xi, n, V);

  r.cocyclic_fraction = ratio(r.count_cocyclic, r.count_total);
  r.squarefree_fraction = ratio(r.count_squarefree, r.count_total);
  r.cocyclic_ratio = ErrBoundedReal::from_integer(r.count_cocyclic) / r.predicted_cocyclic;
  r.squarefree_ratio = ErrBoundedReal::from_integer(r.count_squarefree) / r.predicted_squarefree;
  r.total_ratio = ErrBoundedReal::from_integer(r.count_total) / r.predicted_total;
  r.limit_cocyclic_fraction = th / xi;
  r.limit_squarefree_fraction = rh / xi;
  return r;
}

}  // namespace latcensus::counting
