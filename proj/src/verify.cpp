#include "latcensus/verify.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>

#include "latcensus/arith.hpp"
#include "latcensus/constants.hpp"
#include "latcensus/counting.hpp"
#include "latcensus/errors.hpp"
#include "latcensus/groups.hpp"
#include "latcensus/lattice.hpp"
#include "latcensus/rng.hpp"

namespace latcensus::verify {

namespace {

using arith::factorize;
using lattice::HnfBasis;

std::uint64_t random_in(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng.uniform_below(hi - lo + 1);
}

// Pairs (a, b) with gcd 1, both in [1, hi].
std::vector<std::pair<std::uint64_t, std::uint64_t>> coprime_pairs(std::uint64_t hi, std::size_t count,
                                                                   std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  while (out.size() < count) {
    const auto a = random_in(rng, 1, hi), b = random_in(rng, 1, hi);
    if (std::gcd(a, b) == 1) out.emplace_back(a, b);
  }
  return out;
}

// ---- arith ----

bool sieve_matches_trial_division() {
  const std::uint64_t limit = std::min<std::uint64_t>(arith::configured_sieve_limit(), 1'000'000);
  const auto sieve = arith::shared_sieve(limit);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (!(factorize(n, *sieve) == factorize(n))) return false;
  }
  return true;
}

bool arith_multiplicative() {
  for (const auto& [a, b] : coprime_pairs(1'000'000, 2000, 11)) {
    const auto fa = factorize(a), fb = factorize(b), fab = factorize(a * b);
    if (arith::mobius(fab) != arith::mobius(fa) * arith::mobius(fb)) return false;
    if (arith::euler_phi(fab) != arith::euler_phi(fa) * arith::euler_phi(fb)) return false;
    if (arith::omega(fab) != arith::omega(fa) + arith::omega(fb)) return false;
    if (arith::abelian_group_count(fab) != arith::abelian_group_count(fa) * arith::abelian_group_count(fb)) {
      return false;
    }
    for (unsigned n = 2; n <= 4; ++n) {
      if (arith::f_n(n, fab) != arith::f_n(n, fa) * arith::f_n(n, fb)) return false;
    }
  }
  return true;
}

bool f_n_bound() {
  const auto sieve = arith::shared_sieve(100'000);
  for (std::uint64_t d = 1; d <= 100'000; ++d) {
    const auto f = factorize(d, *sieve);
    if (!arith::is_squarefree(f)) continue;
    const mpq_class bound(mpz_class(1) << arith::omega(f), mpz_class(static_cast<unsigned long>(d)));
    for (unsigned n = 2; n <= 4; ++n) {
      if (arith::f_n(n, f) > bound) return false;
    }
  }
  return true;
}

bool mobius_identity() {
  for (std::uint64_t q = 1; q <= 500; ++q) {
    const auto fq = factorize(q);
    for (unsigned n = 2; n <= 4; ++n) {
      mpq_class lhs = 0;
      for (std::uint64_t d = 1; d <= q; ++d) {
        if (q % d) continue;
        const int mu = arith::mobius(factorize(d));
        if (mu != 0) lhs += mpq_class(mu, arith::ipow(d, n));
      }
      mpq_class rhs = 1;
      for (const auto& pp : fq.factors()) rhs *= 1 - mpq_class(1, arith::ipow(pp.prime, n));
      lhs.canonicalize();
      if (lhs != rhs) return false;
    }
  }
  return true;
}

bool sums_monotone() {
  mpq_class prev_l = 0, prev_w = 0;
  for (std::uint64_t t = 1; t <= 300; ++t) {
    const mpq_class l = arith::landau_sum_exact(t), w = arith::ward_sum_exact(t);
    if (l < prev_l || w < prev_w) return false;
    prev_l = l;
    prev_w = w;
  }
  return true;
}

// ---- constants ----

bool err_within_tol() {
  const long double tol = 1e-10L;
  for (int k = 2; k <= 30; ++k) {
    const auto z = constants::zeta(k, tol);
    if (!z.is_finite() || z.err > tol) return false;
  }
  for (int n = 2; n <= 16; ++n) {
    for (const auto& x : {constants::theta_n(n, tol), constants::rho_n(n, tol)}) {
      if (!x.is_finite() || x.err > tol) return false;
    }
  }
  for (const auto& x : {constants::xi_inf(2, tol), constants::xi(2, 10, tol)}) {
    if (!x.is_finite() || x.err > tol) return false;
  }
  return constants::theta().err <= 1e-12L && constants::density_cocyclic_limit().err <= 1e-10L &&
         constants::density_squarefree_limit().err <= 1e-10L;
}

bool refinement_nested() {
  auto inside = [](const ErrBoundedReal& fine, const ErrBoundedReal& coarse) {
    const long double slack = 2.0L * ErrBoundedReal::kEps * std::fabs(coarse.value);
    return fine.lower() >= coarse.lower() - slack && fine.upper() <= coarse.upper() + slack;
  };
  for (int n = 2; n <= 16; n += 2) {
    if (!inside(constants::theta_n(n, 1e-11L), constants::theta_n(n, 1e-7L))) return false;
    if (!inside(constants::rho_n(n, 1e-11L), constants::rho_n(n, 1e-7L))) return false;
  }
  for (int k = 2; k <= 12; ++k) {
    if (!inside(constants::zeta(k, 1e-15L), constants::zeta(k, 1e-8L))) return false;
  }
  return true;
}

bool theta_n_monotone() {
  const ErrBoundedReal th = constants::theta();
  ErrBoundedReal prev = constants::theta_n(2);
  for (int n = 3; n <= 16; ++n) {
    const ErrBoundedReal cur = constants::theta_n(n);
    if (!(cur.lower() > prev.upper())) return false;
    if (!(cur.upper() < th.lower())) return false;
    prev = cur;
  }
  return std::fabs(constants::theta_n(16).value - th.value) <= 1e-3L;
}

bool sandwich_holds() {
  for (int n = 2; n <= 16; ++n) {
    const auto s = constants::theta_sandwich(n);
    const auto t = constants::theta_n(n);
    if (s.lower.lower() > t.upper() || t.lower() > s.upper.upper()) return false;
  }
  return true;
}

bool eq2_consistency() {
  const auto a = constants::theta() / constants::xi_inf(2);
  return a.overlaps(constants::density_cocyclic_limit());
}

bool rho_n_reciprocal_zeta() {
  // rho_n zeta(n+1) = 1 for the product as defined (see README).
  for (int n = 2; n <= 16; ++n) {
    const auto x = constants::rho_n(n) * constants::zeta(n + 1);
    if (!x.contains(1.0L)) return false;
  }
  return true;
}

bool theta_closed_vs_product() {
  return constants::theta().overlaps(constants::theta_euler_product().value);
}

// ---- lattice ----

lattice::Matrix random_unimodular(Rng& rng, unsigned n) {
  lattice::Matrix u(n, std::vector<std::int64_t>(n, 0));
  for (unsigned i = 0; i < n; ++i) u[i][i] = 1;
  for (int step = 0; step < 6; ++step) {
    const unsigned i = static_cast<unsigned>(rng.uniform_below(n));
    unsigned j = static_cast<unsigned>(rng.uniform_below(n - 1));
    if (j >= i) ++j;
    const std::int64_t c = static_cast<std::int64_t>(rng.uniform_below(5)) - 2;
    for (unsigned k = 0; k < n; ++k) u[i][k] += c * u[j][k];
    if (rng.uniform_below(4) == 0) std::swap(u[i], u[j]);
  }
  return u;
}

lattice::Matrix multiply(const lattice::Matrix& a, const lattice::Matrix& b) {
  const std::size_t n = a.size();
  lattice::Matrix c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

// Runs fn(B, UB) on `count` random nonsingular B with entries in [-20, 20].
template <class F>
bool random_basis_pairs(std::size_t count, std::uint64_t seed, F fn) {
  Rng rng(seed);
  std::size_t done = 0;
  while (done < count) {
    const unsigned n = 2 + static_cast<unsigned>(rng.uniform_below(3));
    lattice::Matrix b(n, std::vector<std::int64_t>(n));
    for (auto& r : b) {
      for (auto& x : r) x = static_cast<std::int64_t>(rng.uniform_below(41)) - 20;
    }
    try {
      (void)lattice::hnf_canonicalize(b);
    } catch (const SingularInput&) {
      continue;
    }
    if (!fn(b, multiply(random_unimodular(rng, n), b))) return false;
    ++done;
  }
  return true;
}

bool hnf_canonical() {
  return random_basis_pairs(1000, 21, [](const lattice::Matrix& b, const lattice::Matrix& ub) {
    const HnfBasis h = lattice::hnf_canonicalize(b);
    return h == lattice::hnf_canonicalize(ub) && h == lattice::hnf_canonicalize(h.rows());
  });
}

bool snf_basis_independent() {
  return random_basis_pairs(1000, 22, [](const lattice::Matrix& b, const lattice::Matrix& ub) {
    const auto s = lattice::smith_invariants(lattice::hnf_canonicalize(b));
    const HnfBasis h = lattice::hnf_canonicalize(b);
    return s == lattice::smith_invariants(lattice::hnf_canonicalize(ub)) &&
           s.order() == mpz_class(std::to_string(h.index()));
  });
}

// (diagonal, above-diagonal entries row-major) ordering key.
std::vector<std::int64_t> enumeration_key(const HnfBasis& b) {
  std::vector<std::int64_t> k;
  for (unsigned i = 0; i < b.n(); ++i) k.push_back(b.at(i, i));
  for (unsigned i = 0; i < b.n(); ++i) {
    for (unsigned j = i + 1; j < b.n(); ++j) k.push_back(b.at(i, j));
  }
  return k;
}

bool enumeration_complete() {
  for (unsigned n = 1; n <= 4; ++n) {
    for (std::uint64_t q = 1; q <= 60; ++q) {
      std::uint64_t count = 0;
      std::vector<std::int64_t> prev;
      bool ok = true;
      lattice::for_each_sublattice(n, q, [&](const HnfBasis& b) {
        auto key = enumeration_key(b);
        // Strictly increasing keys rule out duplicates.
        if (count > 0 && !(prev < key)) ok = false;
        if (b.index() != q) ok = false;
        prev = std::move(key);
        ++count;
      });
      if (!ok) return false;
      if (mpz_class(std::to_string(count)) != lattice::count_sublattices(n, factorize(q))) return false;
    }
  }
  return true;
}

// Calls fn(v) for every residue vector mod q of length n.
template <class F>
void for_each_vector(unsigned n, std::uint64_t q, F fn) {
  lattice::CongruenceVector v{q, std::vector<std::uint64_t>(n, 0)};
  for (;;) {
    fn(v);
    unsigned i = 0;
    while (i < n && ++v.a[i] == q) v.a[i++] = 0;
    if (i == n) return;
  }
}

bool paz_schnorr_bijection() {
  for (unsigned n = 2; n <= 3; ++n) {
    for (std::uint64_t q = 1; q <= 30; ++q) {
      std::map<HnfBasis, std::uint64_t> image;
      for_each_vector(n, q, [&](const lattice::CongruenceVector& v) {
        if (lattice::is_primitive(v)) ++image[lattice::lattice_from_congruence(v, n)];
      });
      std::set<HnfBasis> cocyclic;
      lattice::for_each_sublattice(n, q, [&](const HnfBasis& b) {
        if (lattice::is_cocyclic(b)) cocyclic.insert(b);
      });
      const std::uint64_t phi = arith::euler_phi(factorize(q));
      if (image.size() != cocyclic.size()) return false;
      for (const auto& [b, hits] : image) {
        if (hits != phi || !cocyclic.count(b)) return false;
      }
    }
  }
  return true;
}

bool orbit_size_phi() {
  for (std::uint64_t q = 1; q <= 50; ++q) {
    bool ok = true;
    for_each_vector(2, q, [&](const lattice::CongruenceVector& v) {
      if (!lattice::is_primitive(v)) return;
      std::uint64_t fixing = 0;
      for (std::uint64_t l = 1; l <= q; ++l) {
        if (std::gcd(l, q) != 1) continue;
        bool same = true;
        for (const auto a : v.a) same = same && (l * a) % q == a % q;
        fixing += same;
      }
      if (fixing != 1) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

bool sampler_exact() {
  const unsigned n = 2;
  const std::uint64_t q = 12, draws = 10'000;
  std::map<HnfBasis, std::uint64_t> expected;
  lattice::for_each_sublattice(n, q, [&](const HnfBasis& b) {
    if (lattice::is_cocyclic(b)) expected[b] = 0;
  });
  Rng rng(2024);
  for (std::uint64_t i = 0; i < draws; ++i) {
    auto it = expected.find(lattice::sample_cocyclic(n, q, rng));
    if (it == expected.end()) return false;
    ++it->second;
  }
  const double e = static_cast<double>(draws) / static_cast<double>(expected.size());
  double chi2 = 0.0;
  for (const auto& [b, c] : expected) {
    if (c == 0) return false;
    chi2 += (static_cast<double>(c) - e) * (static_cast<double>(c) - e) / e;
  }
  const boost::math::chi_squared dist(static_cast<double>(expected.size() - 1));
  return chi2 <= boost::math::quantile(dist, 1.0 - 1e-3);
}

// ---- formulas ----

bool A_n_oracle() {
  for (unsigned n = 2; n <= 4; ++n) {
    for (std::uint64_t q = 1; q <= 200; ++q) {
      if (counting::A_n_formula(n, factorize(q)) != counting::A_n_bruteforce(n, q, 2'000'000'000)) return false;
    }
  }
  return true;
}

bool A_n_multiplicative() {
  for (const auto& [a, b] : coprime_pairs(100'000, 1000, 31)) {
    for (unsigned n = 2; n <= 4; ++n) {
      if (counting::A_n_formula(n, factorize(a * b)) !=
          counting::A_n_formula(n, factorize(a)) * counting::A_n_formula(n, factorize(b))) {
        return false;
      }
    }
  }
  return true;
}

bool divisor_sum_identity() {
  for (unsigned n = 2; n <= 3; ++n) {
    for (std::uint64_t V = 1; V <= 100; ++V) {
      if (counting::N_n_divisor_sum(n, V) != mpq_class(counting::N_n(n, V, 1))) return false;
    }
  }
  return true;
}

bool count_sublattices_multiplicative() {
  for (const auto& [a, b] : coprime_pairs(100'000, 500, 41)) {
    for (unsigned n = 1; n <= 5; ++n) {
      if (lattice::count_sublattices(n, factorize(a * b)) !=
          lattice::count_sublattices(n, factorize(a)) * lattice::count_sublattices(n, factorize(b))) {
        return false;
      }
    }
  }
  return true;
}

bool aut_qm_matches() {
  for (std::uint64_t q = 2; q <= 12; ++q) {
    for (unsigned m = 1; m <= 3; ++m) {
      if (groups::aut_order_qm(factorize(q), m) != groups::aut_order(groups::AbelianGroup::homocyclic(q, m))) {
        return false;
      }
    }
  }
  return true;
}

// ---- census ----

bool census_matches(unsigned n, std::uint64_t V) {
  const auto census = counting::census_by_index(n, V);
  const auto sieve = arith::sieve_for(V);
  mpz_class cyc = 0;
  for (std::uint64_t v = 1; v <= V; ++v) {
    const auto& c = census[v - 1];
    cyc += static_cast<unsigned long>(c.by_rank[0] + c.by_rank[1]);
    if (cyc != counting::N_n(n, v, 1)) return false;
    // Squarefree index forces a cyclic quotient.
    if (arith::is_squarefree(factorize(v, *sieve)) && c.by_rank[0] + c.by_rank[1] != c.total) return false;
  }
  return true;
}

bool counts_monotone() {
  for (unsigned n = 2; n <= 3; ++n) {
    mpz_class a = 0, b = 0, c = 0;
    for (std::uint64_t V = 1; V <= 200; ++V) {
      const mpz_class x = counting::N_n(n, V, 1), y = counting::N_sharp(n, V, 1), z = counting::total_count(n, V, 1);
      if (x < a || y < b || z < c) return false;
      if (y > x || x > z) return false;
      a = x;
      b = y;
      c = z;
    }
  }
  return true;
}

// ---- groups ----

bool aut_bruteforce() {
  for (const auto& g : groups::enumerate_groups(48)) {
    if (groups::aut_order(g) != static_cast<unsigned long>(groups::aut_order_bruteforce(g))) return false;
  }
  return true;
}

bool aut_multiplicative() {
  const auto census = groups::enumerate_groups(48);
  std::map<std::string, std::uint64_t> brute;
  auto bf = [&](const groups::AbelianGroup& g) {
    const auto key = groups::primary_string(g);
    auto it = brute.find(key);
    if (it == brute.end()) it = brute.emplace(key, groups::aut_order_bruteforce(g)).first;
    return it->second;
  };
  for (const auto& a : census) {
    for (const auto& b : census) {
      const mpz_class oa = a.order(), ob = b.order();
      if (gcd(oa, ob) != 1 || oa * ob > 48) continue;
      if (bf(a * b) != bf(a) * bf(b)) return false;
      if (groups::aut_order(a * b) != groups::aut_order(a) * groups::aut_order(b)) return false;
    }
  }
  return true;
}

bool free_action_division() {
  for (const auto& g : groups::enumerate_groups(16)) {
    const mpz_class aut = groups::aut_order(g);
    for (unsigned n = 1; n <= 4; ++n) {
      const mpz_class t = groups::generating_tuples_count(g, n);
      if (!mpz_divisible_p(t.get_mpz_t(), aut.get_mpz_t())) return false;
      if (groups::A_n_G(g, n) * aut != t) return false;
      if (n < g.rank() && t != 0) return false;
    }
  }
  return true;
}

bool cyclic_A_n_G() {
  for (std::uint64_t q = 1; q <= 30; ++q) {
    for (unsigned n = 1; n <= 4; ++n) {
      if (groups::A_n_G(groups::AbelianGroup::cyclic(q), n) != counting::A_n_formula(n, factorize(q))) {
        return false;
      }
    }
  }
  return true;
}

bool cross_module_bijection() {
  const std::uint64_t V = 20;
  for (unsigned n = 2; n <= 3; ++n) {
    const auto census = counting::census_by_index(n, V);
    std::vector<mpz_class> lattice_side(n + 1, 0), group_side(n + 1, 0);
    for (std::uint64_t v = 1; v <= V; ++v) {
      for (const auto& g : groups::groups_of_order(factorize(v))) {
        if (g.rank() <= n) group_side[g.rank()] += groups::A_n_G(g, n);
      }
      for (unsigned m = 0; m <= n; ++m) lattice_side[m] += static_cast<unsigned long>(census[v - 1].by_rank[m]);
      if (lattice_side != group_side) return false;
    }
  }
  return true;
}

bool pak_cyclic() {
  for (std::uint64_t q = 1; q <= 50; ++q) {
    const auto g = groups::AbelianGroup::cyclic(q);
    const unsigned n = 2 + static_cast<unsigned>(std::ceil(2.0 * std::log2(static_cast<double>(q))));
    if (!groups::pak_check(g, n, 1)) return false;
  }
  return true;
}

bool mass_identities() {
  const groups::Predicate cyc{groups::Predicate::Kind::cyclic, 0};
  const groups::Predicate sf{groups::Predicate::Kind::squarefree_order, 0};
  std::vector<std::uint64_t> ladder;
  for (std::uint64_t V = 1; V <= 60; ++V) ladder.push_back(V);
  for (std::uint64_t V : {100u, 1000u, 10000u}) ladder.push_back(V);
  for (const auto V : ladder) {
    if (*groups::cl_mass(V, cyc).exact != arith::landau_sum_exact(V)) return false;
    if (*groups::cl_mass(V, sf).exact != arith::ward_sum_exact(V)) return false;
  }
  return true;
}

std::vector<Check> arith_suite() {
  return {{"arith.sieve_matches_trial_division", sieve_matches_trial_division},
          {"arith.multiplicative", arith_multiplicative},
          {"arith.f_n_bound", f_n_bound},
          {"arith.mobius_identity", mobius_identity},
          {"arith.sums_monotone", sums_monotone}};
}

std::vector<Check> constants_suite() {
  return {{"constants.err_within_tol", err_within_tol},
          {"constants.refinement_nested", refinement_nested},
          {"constants.theta_n_monotone", theta_n_monotone},
          {"constants.theta_sandwich", sandwich_holds},
          {"constants.cocyclic_limit_consistency", eq2_consistency},
          {"constants.rho_n_reciprocal_zeta", rho_n_reciprocal_zeta},
          {"constants.theta_closed_vs_product", theta_closed_vs_product}};
}

std::vector<Check> lattice_suite() {
  return {{"lattice.hnf_canonical", hnf_canonical},
          {"lattice.snf_basis_independent", snf_basis_independent},
          {"lattice.enumeration_complete", enumeration_complete},
          {"lattice.paz_schnorr_bijection", paz_schnorr_bijection},
          {"lattice.orbit_size_phi", orbit_size_phi},
          {"lattice.sampler_exact", sampler_exact}};
}

std::vector<Check> formulas_suite() {
  return {{"formulas.A_n_oracle", A_n_oracle},
          {"formulas.A_n_multiplicative", A_n_multiplicative},
          {"formulas.divisor_sum_identity", divisor_sum_identity},
          {"formulas.count_sublattices_multiplicative", count_sublattices_multiplicative},
          {"formulas.aut_qm", aut_qm_matches}};
}

std::vector<Check> census_suite() {
  return {{"census.cocyclic_n2_V150", [] { return census_matches(2, 150); }},
          {"census.cocyclic_n3_V40", [] { return census_matches(3, 40); }},
          {"census.monotone", counts_monotone}};
}

std::vector<Check> groups_suite() {
  return {{"groups.aut_bruteforce", aut_bruteforce},
          {"groups.aut_multiplicative", aut_multiplicative},
          {"groups.free_action_division", free_action_division},
          {"groups.cyclic_A_n_G", cyclic_A_n_G},
          {"groups.cross_module_bijection", cross_module_bijection},
          {"groups.pak_cyclic", pak_cyclic},
          {"groups.mass_identities", mass_identities}};
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"arith", "constants", "lattice", "formulas", "census", "groups", "all"};
}

std::vector<Check> suite(const std::string& name) {
  if (name == "arith") return arith_suite();
  if (name == "constants") return constants_suite();
  if (name == "lattice") return lattice_suite();
  if (name == "formulas") return formulas_suite();
  if (name == "census") return census_suite();
  if (name == "groups") return groups_suite();
  if (name == "all") {
    std::vector<Check> all;
    for (const auto& s : {arith_suite(), constants_suite(), lattice_suite(), formulas_suite(),
                          census_suite(), groups_suite()}) {
      all.insert(all.end(), s.begin(), s.end());
    }
    return all;
  }
  return {};
}

Outcome run(const std::vector<Check>& checks, std::ostream* log) {
  Outcome out;
  for (const auto& c : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string what;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      what = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (log) {
      *log << (ok ? "ok   " : "FAIL ") << c.id << " (" << secs << " s)";
      if (!what.empty()) *log << ": " << what;
      *log << '\n';
    }
    if (!ok) {
      out.failed = c.id;
      return out;
    }
    out.passed.push_back(c.id);
  }
  return out;
}

}  // namespace latcensus::verify
