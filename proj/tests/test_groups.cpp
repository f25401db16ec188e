#include <doctest.h>

#include <functional>
#include <numeric>
#include <set>

#include "latcensus/arith.hpp"
#include "latcensus/constants.hpp"
#include "latcensus/counting.hpp"
#include "latcensus/errors.hpp"
#include "latcensus/groups.hpp"
#include "oracles.hpp"

using namespace latcensus;
using namespace latcensus::groups;

namespace {

using Elem = std::vector<std::uint64_t>;

// Z/d_1 x ... x Z/d_k with explicit element vectors.
struct Explicit {
  std::vector<std::uint64_t> d;

  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    Elem e(d.size(), 0);
    for (;;) {
      out.push_back(e);
      std::size_t k = 0;
      while (k < d.size() && ++e[k] == d[k]) e[k++] = 0;
      if (k == d.size()) break;
    }
    return out;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem c(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) c[i] = (a[i] + b[i]) % d[i];
    return c;
  }
  Elem scale(const Elem& a, std::uint64_t k) const {
    Elem c(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) c[i] = a[i] * k % d[i];
    return c;
  }
  std::set<Elem> span(const std::vector<Elem>& gens) const {
    std::set<Elem> s{Elem(d.size(), 0)};
    std::vector<Elem> todo{Elem(d.size(), 0)};
    while (!todo.empty()) {
      const Elem x = todo.back();
      todo.pop_back();
      for (const auto& g : gens) {
        const Elem y = add(x, g);
        if (s.insert(y).second) todo.push_back(y);
      }
    }
    return s;
  }
  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (auto x : d) o *= x;
    return o;
  }
};

Explicit explicit_of(const AbelianGroup& g) { return {g.cyclic_factors()}; }

// Automorphisms as images of the standard generators.
std::vector<std::vector<Elem>> automorphisms(const Explicit& g) {
  const auto elems = g.elements();
  const std::size_t k = g.d.size();
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> img(k);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      if (g.span(img).size() == g.order()) out.push_back(img);
      return;
    }
    for (const auto& x : elems) {
      if (g.scale(x, g.d[i]) != Elem(k, 0)) continue;  // well defined
      img[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

Elem apply(const Explicit& g, const std::vector<Elem>& img, const Elem& x) {
  Elem y(g.d.size(), 0);
  for (std::size_t i = 0; i < g.d.size(); ++i) y = g.add(y, g.scale(img[i], x[i]));
  return y;
}

std::vector<std::vector<Elem>> generating_tuples(const Explicit& g, unsigned n) {
  const auto elems = g.elements();
  std::vector<std::vector<Elem>> out;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::vector<Elem> t;
    for (auto i : idx) t.push_back(elems[i]);
    if (g.span(t).size() == g.order()) out.push_back(t);
    std::size_t k = 0;
    while (k < n && ++idx[k] == elems.size()) idx[k++] = 0;
    if (k == n) break;
  }
  return out;
}

// p-group of order p^k and rank r: p^{(k - r) n} prod_{i < r} (p^n - p^i).
mpz_class frattini_count(std::uint64_t p, unsigned k, unsigned r, unsigned n) {
  if (n < r) return 0;
  mpz_class c = oracle::ipow(p, (k - r) * n);
  for (unsigned i = 0; i < r; ++i) c *= oracle::ipow(p, n) - oracle::ipow(p, i);
  return c;
}

}  // namespace

TEST_CASE("construction and invariants") {
  const auto g = AbelianGroup::from_invariant_factors({2, 12});
  CHECK(g.order() == 24);
  CHECK(g.rank() == 2);
  CHECK(g.invariant_factors() == std::vector<mpz_class>{2, 12});
  CHECK(primary_string(g) == "2^[2,1] 3^[1]");
  CHECK(to_string(AbelianGroup{}) == "1");
  CHECK(primary_string(AbelianGroup{}) == "1");
  CHECK(AbelianGroup::cyclic(6) == AbelianGroup::from_invariant_factors({2, 3}));
  CHECK(AbelianGroup::homocyclic(6, 2).invariant_factors() == std::vector<mpz_class>{6, 6});
  CHECK(AbelianGroup::cyclic(4) * AbelianGroup::cyclic(2) == AbelianGroup::from_invariant_factors({4, 2}));
  CHECK(AbelianGroup::cyclic(1).order() == 1);
  CHECK_THROWS_AS(AbelianGroup::from_primary({{4, {1}}}), std::invalid_argument);
  CHECK_THROWS_AS(AbelianGroup::from_primary({{2, {1, 2}}}), std::invalid_argument);
  CHECK(AbelianGroup::from_primary({{2, {}}}) == AbelianGroup{});
  CHECK(g.standard_form(2) == StandardForm{{2, 1}, {1, 1}});

  // invariant factors reproduce the group
  for (const auto& h : enumerate_groups(200)) {
    REQUIRE(AbelianGroup::from_invariant_factors(h.invariant_factors()) == h);
    const auto inv = h.invariant_factors();
    for (std::size_t i = 1; i < inv.size(); ++i) REQUIRE(mpz_divisible_p(inv[i].get_mpz_t(), inv[i - 1].get_mpz_t()));
    REQUIRE(h.rank() == inv.size());
  }
}

TEST_CASE("census") {
  CHECK(enumerate_groups(4).size() == 5);
  CHECK(enumerate_groups(1).size() == 1);
  CHECK(enumerate_groups(8).size() == 11);
  std::uint64_t classes = 0;
  for (std::uint64_t n = 1; n <= 500; ++n) classes += arith::abelian_group_count(arith::factorize(n)).get_ui();
  CHECK(enumerate_groups(500).size() == classes);
  for (unsigned k = 0; k <= 12; ++k) CHECK(partitions_of(k).size() == oracle::partitions_naive(k, k));
  CHECK_THROWS_AS(enumerate_groups(100, 10), CapExceeded);
  const auto u = uniform_census(100);
  CHECK(u.classes == 185);
  CHECK(u.cyclic == 100);
}

TEST_CASE("automorphism orders") {
  CHECK(aut_order(AbelianGroup::from_invariant_factors({2, 2})) == 6);
  CHECK(aut_order(AbelianGroup::from_invariant_factors({4, 2})) == 8);
  CHECK(aut_order(AbelianGroup::cyclic(6)) == 2);
  CHECK(aut_order(AbelianGroup{}) == 1);
  CHECK(aut_order(AbelianGroup::from_invariant_factors({2, 3, 3})) == 48);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (unsigned e = 1; e <= 4; ++e) {
      const mpz_class pe = oracle::ipow(p, e);
      CHECK(aut_order_pgroup(p, {{e, 1}}) == pe - pe / static_cast<unsigned long>(p));
    }
  }
  CHECK(aut_order_qm(arith::factorize(2), 2) == 6);
  CHECK(aut_order_qm(arith::factorize(3), 2) == 48);
  CHECK(aut_order_qm(arith::factorize(7), 1) == 6);
  CHECK_THROWS_AS(aut_order_pgroup(4, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(aut_order_pgroup(2, {{1, 1}, {2, 1}}), std::invalid_argument);

  // explicit automorphism lists
  for (const auto& g : enumerate_groups(24)) {
    if (g.rank() > 3) continue;
    const auto e = explicit_of(g);
    const auto autos = automorphisms(e);
    REQUIRE(aut_order(g) == static_cast<unsigned long>(autos.size()));
    REQUIRE(aut_order_bruteforce(g) == autos.size());
  }
  for (std::uint64_t q = 2; q <= 12; ++q) {
    for (unsigned m = 1; m <= 3; ++m) {
      REQUIRE(aut_order_qm(arith::factorize(q), m) == aut_order(AbelianGroup::homocyclic(q, m)));
    }
  }
}

TEST_CASE("generating tuples") {
  const auto v4 = AbelianGroup::from_invariant_factors({2, 2});
  CHECK(generating_tuples_count(v4, 2) == 6);
  CHECK(A_n_G(v4, 2) == 1);
  for (unsigned n = 0; n <= 4; ++n) CHECK(A_n_G(AbelianGroup{}, n) == 1);

  // naive tuples and explicit orbit counts
  for (const auto& g : enumerate_groups(12)) {
    const auto e = explicit_of(g);
    const auto autos = automorphisms(e);
    for (unsigned n = 1; n <= (g.order() <= 6 ? 3u : 2u); ++n) {
      const auto tuples = generating_tuples(e, n);
      REQUIRE(generating_tuples_count(g, n) == static_cast<unsigned long>(tuples.size()));
      std::set<std::vector<Elem>> seen;
      std::uint64_t orbits = 0;
      for (const auto& t : tuples) {
        if (seen.count(t)) continue;
        ++orbits;
        for (const auto& a : autos) {
          std::vector<Elem> img;
          for (const auto& x : t) img.push_back(apply(e, a, x));
          seen.insert(img);
        }
      }
      REQUIRE(A_n_G(g, n) == static_cast<unsigned long>(orbits));
    }
  }

  // p-groups against the Frattini quotient count
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned k = 1; p == 2 ? k <= 6 : (p == 3 ? k <= 4 : k <= 3); ++k) {
      arith::FactoredInt f = arith::FactoredInt::from_factors({{p, k}});
      for (const auto& g : groups_of_order(f)) {
        for (unsigned n = 0; n <= 4; ++n) {
          REQUIRE(generating_tuples_count(g, n) == frattini_count(p, k, g.rank(), n));
        }
      }
    }
  }

  // cyclic groups give the co-cyclic lattice count
  for (std::uint64_t q = 1; q <= 30; ++q) {
    for (unsigned n = 1; n <= 4; ++n) {
      REQUIRE(A_n_G(AbelianGroup::cyclic(q), n) == counting::A_n_formula(n, arith::factorize(q)));
    }
  }
  CHECK_THROWS_AS(generating_tuples_count(AbelianGroup::cyclic(5000), 2), CapExceeded);
}

TEST_CASE("pak") {
  CHECK(pak_check(AbelianGroup::cyclic(8), 9, 1));
  CHECK(pak_check(AbelianGroup{}, 1, 5));
  CHECK(pak_check(AbelianGroup{}, 0, 0));
  CHECK(pak_check(AbelianGroup::from_invariant_factors({2, 2}), 7, 1));
  CHECK(pak_hypothesis(AbelianGroup::cyclic(8), 9, 1));
  CHECK_FALSE(pak_hypothesis(AbelianGroup::cyclic(8), 8, 1));
}

TEST_CASE("predicates") {
  CHECK(Predicate::parse("all")->kind == Predicate::Kind::all);
  CHECK(Predicate::parse("cyclic")->kind == Predicate::Kind::cyclic);
  CHECK(Predicate::parse("squarefree")->kind == Predicate::Kind::squarefree_order);
  const auto r = Predicate::parse("rank<=2");
  REQUIRE(r);
  CHECK(r->r == 2);
  CHECK(r->name() == "rank<=2");
  CHECK_FALSE(Predicate::parse("rank<="));
  CHECK_FALSE(Predicate::parse("bogus"));
  CHECK(r->holds(AbelianGroup::from_invariant_factors({2, 4})));
  CHECK_FALSE(r->holds(AbelianGroup::from_invariant_factors({2, 2, 2})));
}

TEST_CASE("cohen-lenstra masses") {
  const auto all = *Predicate::parse("all");
  CHECK(*cl_mass(3, all).exact == mpq_class(5, 2));
  CHECK(*cl_mass(4, all).exact == mpq_class(19, 6));

  // exact masses from the explicit census
  mpq_class total = 0, cyc = 0, sqf = 0, r1 = 0;
  for (const auto& g : enumerate_groups(300)) {
    const mpq_class w(1, aut_order(g));
    total += w;
    if (g.is_cyclic()) cyc += w;
    if (oracle::squarefree_by_division(g.order().get_ui())) sqf += w;
    if (g.rank() <= 1) r1 += w;
  }
  const auto acc = cl_total_mass(300, {*Predicate::parse("cyclic"), *Predicate::parse("squarefree"),
                                       *Predicate::parse("rank<=1")});
  CHECK(*acc.total.exact == total);
  CHECK(*acc.predicates[0].second.exact == cyc);
  CHECK(*acc.predicates[1].second.exact == sqf);
  CHECK(*acc.predicates[2].second.exact == r1);
  CHECK(cyc == arith::landau_sum_exact(300));
  CHECK(sqf == arith::ward_sum_exact(300));

  // the floating path encloses the exact value at the switch-over
  const auto e = cl_mass(arith::kExactSumLimit, all);
  const auto f = cl_mass(arith::kExactSumLimit + 1, all);
  REQUIRE(e.exact);
  CHECK_FALSE(f.exact);
  const mpq_class last = mpq_class(1, aut_order(AbelianGroup::cyclic(arith::kExactSumLimit + 1)));
  CHECK(f.approx.overlaps(ErrBoundedReal::from_rational(*e.exact + last)));
  CHECK(cl_predicate_mass(arith::kExactSumLimit + 1, *Predicate::parse("cyclic"))
            .approx.overlaps(arith::landau_sum(arith::kExactSumLimit + 1).approx));
}

TEST_CASE("rank densities") {
  for (std::uint64_t p : {2, 3, 5}) {
    ErrBoundedReal s{0, 0};
    for (unsigned r = 0; r <= 12; ++r) s += rank_prob(p, r);
    CHECK(std::fabs(static_cast<double>(s.value) - 1.0) < 1e-12);
  }
  const auto p997 = rank_prob(997, 0);
  CHECK(p997.value >= 0.998L);
  CHECK(p997.value <= 1.0L);
  // P(p,0) = prod_{i>=1} (1 - p^{-i})
  long double direct = 1;
  for (int i = 1; i < 200; ++i) direct *= 1 - std::pow(2.0L, -i);
  const auto p2 = rank_prob(2, 0);
  CHECK(p2.err <= 1e-12L);
  CHECK(std::fabs(p2.value - direct) <= p2.err + 1e-16L);

  CHECK(delta_rank_at_most(1).overlaps(constants::theta() / constants::xi_inf(2)));
  CHECK(std::fabs(static_cast<double>(delta_rank_at_most(2).value) - 0.995) <= 0.001);
  CHECK(delta_rank_at_most(3).value > delta_rank_at_most(2).value);
  for (unsigned r = 2; r <= 6; ++r) {
    const auto b = delta_rank_at_least_bound(r);
    REQUIRE(b.value <= 8 * (constants::zeta(static_cast<int>(r * r), 1e-15L) - ErrBoundedReal::exact(1)).upper());
    REQUIRE(b.value >= 0);
  }
  CHECK(delta_rank_at_least_bound(3).value <= 8 * std::ldexp(1.0L, -9) * 1.03L);
  // forms a consistent tail bound: 1 - Delta(<= r - 1) <= bound(r)
  CHECK(1 - delta_rank_at_most(1).value <= delta_rank_at_least_bound(2).value);
  CHECK(1 - delta_rank_at_most(2).value <= delta_rank_at_least_bound(3).value);

  CHECK(std::fabs(static_cast<double>(uniform_density_cyclic().value) - 0.44) <= 0.005);
  CHECK(std::fabs(static_cast<double>(uniform_density_squarefree().value) - 0.26) <= 0.005);
}
