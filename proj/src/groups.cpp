#include "latcensus/groups.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "latcensus/constants.hpp"
#include "latcensus/errors.hpp"

namespace latcensus::groups {

namespace {

constexpr long double kEps = ErrBoundedReal::kEps;

mpz_class cap_mpz(std::uint64_t cap) { return mpz_class(std::to_string(cap)); }

/// Elements of Z/d_1 x ... x Z/d_k encoded in mixed radix.
class ElementSpace {
 public:
  explicit ElementSpace(std::vector<std::uint64_t> radix) : radix_(std::move(radix)) {
    size_ = 1;
    for (auto d : radix_) size_ *= d;
  }

  std::uint64_t size() const { return size_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0, mul = 1;
    for (const auto d : radix_) {
      const std::uint64_t s = (a % d + b % d) % d;
      r += s * mul;
      mul *= d;
      a /= d;
      b /= d;
    }
    return r;
  }

  std::uint64_t order_of(std::uint64_t x) const {
    std::uint64_t o = 1;
    for (const auto d : radix_) {
      const std::uint64_t c = x % d;
      x /= d;
      o = std::lcm(o, d / std::gcd(c, d));
    }
    return o;
  }

 private:
  std::vector<std::uint64_t> radix_;
  std::uint64_t size_;
};

using Bits = std::vector<std::uint64_t>;

bool test_bit(const Bits& b, std::uint64_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void set_bit(Bits& b, std::uint64_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

// H + <x> given the element list of H.
std::vector<std::uint64_t> join_cyclic(const ElementSpace& es, const std::vector<std::uint64_t>& h,
                                       const Bits& hbits, std::uint64_t x) {
  std::vector<std::uint64_t> out = h;
  std::uint64_t y = x;
  while (!test_bit(hbits, y)) {
    for (const auto e : h) out.push_back(es.add(e, y));
    y = es.add(y, x);
  }
  return out;
}

Bits to_bits(const std::vector<std::uint64_t>& elems, std::uint64_t size) {
  Bits b((size + 63) / 64, 0);
  for (const auto e : elems) set_bit(b, e);
  return b;
}

void check_standard_form(std::uint64_t p, const StandardForm& form) {
  if (!arith::is_prime(p)) throw std::invalid_argument("aut_order_pgroup: p is not prime");
  for (std::size_t i = 0; i < form.size(); ++i) {
    if (form[i].first == 0 || form[i].second == 0) {
      throw std::invalid_argument("aut_order_pgroup: exponents and multiplicities must be positive");
    }
    if (i > 0 && form[i].first >= form[i - 1].first) {
      throw std::invalid_argument("aut_order_pgroup: exponents must strictly decrease");
    }
  }
}

std::vector<std::vector<unsigned>> partitions_uncached(unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (unsigned part = 1; part <= std::min(left, max_part); ++part) {
      cur.push_back(part);
      rec(left - part, part);
      cur.pop_back();
    }
  };
  rec(k, k);
  std::sort(out.begin(), out.end());
  return out;
}

StandardForm standard_form_of(const std::vector<unsigned>& parts) {
  StandardForm f;
  for (const unsigned e : parts) {
    if (!f.empty() && f.back().first == e) {
      ++f.back().second;
    } else {
      f.emplace_back(e, 1);
    }
  }
  return f;
}

// sum of 1/#Aut over p-groups of order p^k whose partition passes `keep`.
template <class Keep>
long double local_mass(std::uint64_t p, unsigned k, Keep keep) {
  long double m = 0.0L;
  for (const auto& part : partitions_of(k)) {
    if (!keep(part)) continue;
    m += 1.0L / to_long_double(aut_order_pgroup(p, standard_form_of(part)));
  }
  return m;
}

bool keep_partition(const Predicate& pred, unsigned k, const std::vector<unsigned>& part) {
  switch (pred.kind) {
    case Predicate::Kind::all:
      return true;
    case Predicate::Kind::cyclic:
      return part.size() <= 1;
    case Predicate::Kind::squarefree_order:
      return k <= 1;
    case Predicate::Kind::rank_at_most:
      return part.size() <= pred.r;
  }
  return false;
}

arith::RationalSum mass_floating(std::uint64_t V, const Predicate& pred) {
  const auto sieve = arith::sieve_for(V);
  std::map<std::pair<std::uint64_t, unsigned>, long double> cache;
  CompensatedSum acc(64.0L * kEps);
  for (std::uint64_t n = 1; n <= V; ++n) {
    const auto f = arith::factorize(n, *sieve);
    long double term = 1.0L;
    for (const auto& pp : f.factors()) {
      const unsigned k = pp.exponent;
      auto keep = [&](const std::vector<unsigned>& part) { return keep_partition(pred, k, part); };
      if (k == 1) {
        term *= keep(std::vector<unsigned>{1}) ? 1.0L / static_cast<long double>(pp.prime - 1) : 0.0L;
      } else {
        auto [it, fresh] = cache.try_emplace({pp.prime, k}, 0.0L);
        if (fresh) it->second = local_mass(pp.prime, k, keep);
        term *= it->second;
      }
      if (term == 0.0L) break;
    }
    if (term != 0.0L) acc.add(term);
  }
  arith::RationalSum out;
  out.approx = acc.result();
  return out;
}

arith::RationalSum mass_exact(std::uint64_t V, const Predicate& pred) {
  mpq_class s = 0;
  for_each_group(V, [&](const AbelianGroup& g) {
    if (pred.holds(g)) s += mpq_class(mpz_class(1), aut_order(g));
  });
  s.canonicalize();
  arith::RationalSum out;
  out.approx = ErrBoundedReal::from_rational(s);
  out.exact = std::move(s);
  return out;
}

}  // namespace

AbelianGroup AbelianGroup::from_primary(std::map<std::uint64_t, std::vector<unsigned>> parts) {
  for (auto it = parts.begin(); it != parts.end();) {
    if (!arith::is_prime(it->first)) throw std::invalid_argument("AbelianGroup: key is not prime");
    const auto& v = it->second;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) throw std::invalid_argument("AbelianGroup: zero exponent");
      if (i > 0 && v[i] > v[i - 1]) throw std::invalid_argument("AbelianGroup: parts must not increase");
    }
    it = v.empty() ? parts.erase(it) : std::next(it);
  }
  AbelianGroup g;
  g.parts_ = std::move(parts);
  return g;
}

AbelianGroup AbelianGroup::from_invariant_factors(const std::vector<mpz_class>& d) {
  std::map<std::uint64_t, std::vector<unsigned>> parts;
  for (const auto& x : d) {
    if (sgn(x) <= 0 || !x.fits_ulong_p()) {
      throw std::invalid_argument("from_invariant_factors: factors must be positive 64-bit");
    }
    const auto f = arith::factorize(x.get_ui());
    for (const auto& pp : f.factors()) parts[pp.prime].push_back(pp.exponent);
  }
  for (auto& [p, v] : parts) std::sort(v.rbegin(), v.rend());
  return from_primary(std::move(parts));
}

AbelianGroup AbelianGroup::cyclic(std::uint64_t q) { return homocyclic(q, 1); }

AbelianGroup AbelianGroup::homocyclic(std::uint64_t q, unsigned m) {
  if (q == 0) throw std::invalid_argument("homocyclic: q must be >= 1");
  std::map<std::uint64_t, std::vector<unsigned>> parts;
  const auto f = arith::factorize(q);
  for (const auto& pp : f.factors()) parts[pp.prime].assign(m, pp.exponent);
  return from_primary(std::move(parts));
}

StandardForm AbelianGroup::standard_form(std::uint64_t p) const {
  const auto it = parts_.find(p);
  if (it == parts_.end()) return {};
  return standard_form_of(it->second);
}

mpz_class AbelianGroup::order() const {
  mpz_class r = 1;
  for (const auto& [p, v] : parts_) {
    for (const unsigned e : v) r *= arith::ipow(p, e);
  }
  return r;
}

unsigned AbelianGroup::rank() const {
  std::size_t r = 0;
  for (const auto& [p, v] : parts_) r = std::max(r, v.size());
  return static_cast<unsigned>(r);
}

std::vector<mpz_class> AbelianGroup::invariant_factors() const {
  const unsigned r = rank();
  std::vector<mpz_class> d(r, 1);
  // The largest part of every prime goes into the last factor, and so on.
  for (const auto& [p, v] : parts_) {
    for (std::size_t i = 0; i < v.size(); ++i) d[r - 1 - i] *= arith::ipow(p, v[i]);
  }
  return d;
}

std::vector<std::uint64_t> AbelianGroup::cyclic_factors() const {
  std::vector<std::uint64_t> out;
  for (const auto& [p, v] : parts_) {
    for (const unsigned e : v) {
      const mpz_class pe = arith::ipow(p, e);
      if (!pe.fits_ulong_p()) throw std::overflow_error("cyclic factor exceeds 64 bits");
      out.push_back(pe.get_ui());
    }
  }
  return out;
}

AbelianGroup operator*(const AbelianGroup& a, const AbelianGroup& b) {
  auto parts = a.parts_;
  for (const auto& [p, v] : b.parts_) {
    auto& dst = parts[p];
    dst.insert(dst.end(), v.begin(), v.end());
    std::sort(dst.rbegin(), dst.rend());
  }
  return AbelianGroup::from_primary(std::move(parts));
}

std::string to_string(const AbelianGroup& g) {
  if (g.primary().empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, v] : g.primary()) {
    for (const unsigned e : v) {
      os << (first ? "" : " x ") << "Z/" << arith::ipow(p, e).get_str();
      first = false;
    }
  }
  return os.str();
}

std::string primary_string(const AbelianGroup& g) {
  if (g.primary().empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, v] : g.primary()) {
    os << (first ? "" : " ") << p << "^[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
    first = false;
  }
  return os.str();
}

std::vector<std::vector<unsigned>> partitions_of(unsigned k) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<std::vector<unsigned>>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, partitions_uncached(k)).first;
  return it->second;
}

mpz_class aut_order_pgroup(std::uint64_t p, const StandardForm& form) {
  check_standard_form(p, form);
  // prod_{i,j} p^{min(e_i,e_j) r_i r_j} * prod_i prod_{s<=r_i} (1 - p^{-s})
  //   = p^{E - sum_i r_i(r_i+1)/2} * prod_i prod_{s<=r_i} (p^s - 1)
  std::uint64_t E = 0, shift = 0;
  mpz_class r = 1;
  for (const auto& [ei, ri] : form) {
    for (const auto& [ej, rj] : form) E += static_cast<std::uint64_t>(std::min(ei, ej)) * ri * rj;
    shift += static_cast<std::uint64_t>(ri) * (ri + 1) / 2;
    for (unsigned s = 1; s <= ri; ++s) r *= arith::ipow(p, s) - 1;
  }
  return r * arith::ipow(p, static_cast<unsigned>(E - shift));
}

mpz_class aut_order(const AbelianGroup& g) {
  mpz_class r = 1;
  for (const auto& [p, v] : g.primary()) r *= aut_order_pgroup(p, standard_form_of(v));
  return r;
}

mpz_class aut_order_qm(const arith::FactoredInt& q, unsigned m) {
  if (q.value() < 2) throw std::invalid_argument("aut_order_qm: q must be >= 2");
  if (m == 0) throw std::invalid_argument("aut_order_qm: m must be >= 1");
  mpz_class r = 1;
  const std::uint64_t shift = static_cast<std::uint64_t>(m) * (m + 1) / 2;
  for (const auto& pp : q.factors()) {
    r *= arith::ipow(pp.prime, static_cast<unsigned>(
                                   static_cast<std::uint64_t>(pp.exponent) * m * m - shift));
    for (unsigned s = 1; s <= m; ++s) r *= arith::ipow(pp.prime, s) - 1;
  }
  return r;
}

std::uint64_t aut_order_bruteforce(const AbelianGroup& g, std::uint64_t cap) {
  if (g.order() > cap_mpz(cap)) throw CapExceeded("aut_order_bruteforce: group order exceeds cap");
  const auto radix = g.cyclic_factors();
  const ElementSpace es(radix);
  const std::uint64_t size = es.size();
  // Candidate images of generator i: elements whose order divides d_i.
  std::vector<std::vector<std::uint64_t>> candidates(radix.size());
  for (std::size_t i = 0; i < radix.size(); ++i) {
    for (std::uint64_t x = 0; x < size; ++x) {
      if (radix[i] % es.order_of(x) == 0) candidates[i].push_back(x);
    }
  }
  std::uint64_t count = 0;
  std::function<void(std::size_t, const std::vector<std::uint64_t>&)> rec =
      [&](std::size_t i, const std::vector<std::uint64_t>& h) {
        if (i == radix.size()) {
          ++count;
          return;
        }
        const Bits hb = to_bits(h, size);
        for (const auto x : candidates[i]) {
          // Injective on <g_1..g_i> iff <x> meets the current image trivially.
          std::uint64_t y = x, k = 1;
          while (k < radix[i] && !test_bit(hb, y)) {
            y = es.add(y, x);
            ++k;
          }
          if (k != radix[i]) continue;
          if (i + 1 == radix.size()) {
            ++count;
            continue;
          }
          rec(i + 1, join_cyclic(es, h, hb, x));
        }
      };
  rec(0, {0});
  return count;
}

std::vector<AbelianGroup> groups_of_order(const arith::FactoredInt& n) {
  std::vector<AbelianGroup> out{AbelianGroup{}};
  for (const auto& pp : n.factors()) {
    std::vector<AbelianGroup> next;
    const auto parts = partitions_of(pp.exponent);
    for (const auto& g : out) {
      for (const auto& part : parts) {
        auto m = g.primary();
        m[pp.prime] = part;
        next.push_back(AbelianGroup::from_primary(std::move(m)));
      }
    }
    out = std::move(next);
  }
  return out;
}

void for_each_group(std::uint64_t V, const std::function<void(const AbelianGroup&)>& fn, std::uint64_t cap) {
  if (V > cap) {
    throw CapExceeded("enumerate_groups: V = " + std::to_string(V) + " exceeds cap " + std::to_string(cap));
  }
  const auto sieve = arith::sieve_for(V);
  for (std::uint64_t n = 1; n <= V; ++n) {
    for (const auto& g : groups_of_order(arith::factorize(n, *sieve))) fn(g);
  }
}

std::vector<AbelianGroup> enumerate_groups(std::uint64_t V, std::uint64_t cap) {
  std::vector<AbelianGroup> out;
  for_each_group(V, [&](const AbelianGroup& g) { out.push_back(g); }, cap);
  return out;
}

mpz_class generating_tuples_count(const AbelianGroup& g, unsigned n, std::uint64_t cap) {
  if (g.order() > cap_mpz(cap)) throw CapExceeded("generating_tuples_count: group order exceeds cap");
  const ElementSpace es(g.cyclic_factors());
  const std::uint64_t size = es.size();
  constexpr std::size_t kMaxStates = 200'000;

  // Subgroups reached so far, as element lists and bitsets.
  std::vector<std::vector<std::uint64_t>> elems{{0}};
  std::vector<Bits> bits{to_bits({0}, size)};
  std::map<Bits, std::size_t> id{{bits[0], 0}};
  // transitions[s] = (target subgroup, number of x in G leading there)
  std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> transitions;

  auto expand = [&](std::size_t s) {
    std::map<std::size_t, std::uint64_t> tally;
    for (std::uint64_t x = 0; x < size; ++x) {
      if (test_bit(bits[s], x)) {
        ++tally[s];
        continue;
      }
      auto joined = join_cyclic(es, elems[s], bits[s], x);
      Bits jb = to_bits(joined, size);
      auto [it, fresh] = id.try_emplace(jb, elems.size());
      if (fresh) {
        if (elems.size() >= kMaxStates) throw CapExceeded("generating_tuples_count: too many subgroups");
        elems.push_back(std::move(joined));
        bits.push_back(std::move(jb));
      }
      ++tally[it->second];
    }
    return std::vector<std::pair<std::size_t, std::uint64_t>>(tally.begin(), tally.end());
  };

  std::map<std::size_t, mpz_class> dist{{0, 1}};
  for (unsigned step = 0; step < n; ++step) {
    std::map<std::size_t, mpz_class> next;
    for (const auto& [s, c] : dist) {
      if (transitions.size() <= s) transitions.resize(s + 1);
      if (transitions[s].empty()) transitions[s] = expand(s);
      for (const auto& [t, mult] : transitions[s]) next[t] += c * static_cast<unsigned long>(mult);
    }
    dist = std::move(next);
  }
  // The whole group is the subgroup with `size` elements.
  for (const auto& [s, c] : dist) {
    if (elems[s].size() == size) return c;
  }
  return 0;
}

mpz_class A_n_G(const AbelianGroup& g, unsigned n, std::uint64_t cap) {
  const mpz_class tuples = generating_tuples_count(g, n, cap);
  const mpz_class aut = aut_order(g);
  if (!mpz_divisible_p(tuples.get_mpz_t(), aut.get_mpz_t())) {
    throw std::logic_error("A_n_G: #Aut does not divide the generating-tuple count");
  }
  return tuples / aut;
}

bool pak_check(const AbelianGroup& g, unsigned n, unsigned k, std::uint64_t cap) {
  const mpz_class G = g.order();
  const mpz_class tuples = generating_tuples_count(g, n, cap);
  mpz_class Gk, Gn;
  mpz_pow_ui(Gk.get_mpz_t(), G.get_mpz_t(), k);
  mpz_pow_ui(Gn.get_mpz_t(), G.get_mpz_t(), n);
  // tuples / G^n >= 1 - G^{-k}  <=>  tuples * G^k >= G^n (G^k - 1)
  return tuples * Gk >= Gn * (Gk - 1);
}

bool pak_hypothesis(const AbelianGroup& g, unsigned n, unsigned k, long double base) {
  if (!(base > 1.0L)) throw std::invalid_argument("pak_hypothesis: log base must exceed 1");
  const long double logG = std::log(to_long_double(g.order())) / std::log(base);
  return static_cast<long double>(n) > (k + 1) * logG + 2.0L;
}

bool Predicate::holds(const AbelianGroup& g) const {
  switch (kind) {
    case Kind::all:
      return true;
    case Kind::cyclic:
      return g.rank() <= 1;
    case Kind::squarefree_order:
      for (const auto& [p, v] : g.primary()) {
        if (v.size() != 1 || v[0] != 1) return false;
      }
      return true;
    case Kind::rank_at_most:
      return g.rank() <= r;
  }
  return false;
}

std::string Predicate::name() const {
  switch (kind) {
    case Kind::all:
      return "all";
    case Kind::cyclic:
      return "cyclic";
    case Kind::squarefree_order:
      return "squarefree";
    case Kind::rank_at_most:
      return "rank<=" + std::to_string(r);
  }
  return "?";
}

std::optional<Predicate> Predicate::parse(const std::string& s) {
  if (s == "all") return Predicate{Kind::all, 0};
  if (s == "cyclic") return Predicate{Kind::cyclic, 0};
  if (s == "squarefree") return Predicate{Kind::squarefree_order, 0};
  const std::string prefix = "rank<=";
  if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size()) {
    const std::string digits = s.substr(prefix.size());
    if (digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 6) return std::nullopt;
    return Predicate{Kind::rank_at_most, static_cast<unsigned>(std::stoul(digits))};
  }
  return std::nullopt;
}

arith::RationalSum cl_mass(std::uint64_t V, const Predicate& pred) {
  if (V == 0) throw std::invalid_argument("cl_mass: V must be >= 1");
  return V <= arith::kExactSumLimit ? mass_exact(V, pred) : mass_floating(V, pred);
}

MassAccumulator cl_total_mass(std::uint64_t V, const std::vector<Predicate>& preds) {
  MassAccumulator acc;
  acc.V = V;
  acc.total = cl_mass(V, Predicate{});
  for (const auto& p : preds) acc.predicates.emplace_back(p, cl_mass(V, p));
  return acc;
}

arith::RationalSum cl_predicate_mass(std::uint64_t V, const Predicate& pred) { return cl_mass(V, pred); }

ErrBoundedReal rank_prob(std::uint64_t p, unsigned r, long double tol) {
  if (!arith::is_prime(p)) throw std::invalid_argument("rank_prob: p must be prime");
  if (!(tol > 0.0L)) throw std::invalid_argument("rank_prob: tol must be positive");
  const ErrBoundedReal one = ErrBoundedReal::exact(1.0L);
  const ErrBoundedReal x = ErrBoundedReal::rounded(1.0L / static_cast<long double>(p));
  // prod_{i<=I} (1 - x^i) with tail prod_{i>I} in [1 - x^{I+1}/(1-x), 1].
  ErrBoundedReal prod = one;
  ErrBoundedReal xi = one;
  unsigned I = 0;
  for (;;) {
    ++I;
    xi *= x;
    prod *= one - xi;
    const long double T = xi.value * x.value / (1.0L - x.value) * (1.0L + 8.0L * kEps);
    if (T <= tol / 4.0L || T == 0.0L) {
      prod *= ErrBoundedReal{1.0L - T / 2.0L, T / 2.0L * (1.0L + kEps) + kEps};
      break;
    }
  }
  ErrBoundedReal den = one;
  xi = one;
  for (unsigned i = 1; i <= r; ++i) {
    xi *= x;
    den *= (one - xi) * (one - xi);
  }
  return pow(x, r * r) * prod / den;
}

ErrBoundedReal delta_rank_at_most(unsigned r, long double tol) {
  if (r < 1) throw std::invalid_argument("delta_rank_at_most: r must be >= 1");
  // Xi_2^{-1} prod_p S_r(p) = Xi_3^{-1} prod_p [S_r(p) (1 - p^{-2})], and
  // the bracket is 1 + O(p^{-3}) (between 1 and 1 + 2 p^{-3}).
  constants::EulerOptions opts;
  opts.tol = tol;
  auto local = [r](std::uint64_t, long double x) {
    long double s = 0.0L, xk2 = 1.0L, den = 1.0L, xk = 1.0L;
    for (unsigned k = 0; k <= r; ++k) {
      if (k > 0) {
        xk *= x;
        den *= (1.0L - xk) * (1.0L - xk);
        // x^{k^2} = x^{(k-1)^2} * x^{2k-1}
        xk2 *= std::pow(x, static_cast<long double>(2 * k - 1));
      }
      const long double term = xk2 * (1.0L - x) / den;
      s += term;
      if (term < s * kEps * kEps) break;
    }
    return s * (1.0L - x * x);
  };
  return constants::euler_product(local, reciprocal(constants::xi_inf(3, tol / 8.0L)), {2.0L, 3}, opts).value;
}

ErrBoundedReal delta_rank_at_least_bound(unsigned r) {
  if (r < 2) throw std::invalid_argument("delta_rank_at_least_bound: r must be >= 2");
  const int k = static_cast<int>(r * r);
  const ErrBoundedReal zm1 = constants::zeta_minus_one(k, std::ldexp(1e-15L, -k));
  const ErrBoundedReal y = ErrBoundedReal::exact(8.0L) * zm1;
  // 1 - e^{-y} is increasing with slope e^{-y} <= 1.
  const long double v = -std::expm1(-y.value);
  return {v, y.err + 4.0L * kEps * std::fabs(v)};
}

ErrBoundedReal uniform_density_cyclic() { return reciprocal(constants::xi_inf(2, 1e-12L)); }

ErrBoundedReal uniform_density_squarefree() {
  return reciprocal(constants::zeta(2, 1e-14L) * constants::xi_inf(2, 1e-12L));
}

UniformCensus uniform_census(std::uint64_t V) {
  if (V == 0) throw std::invalid_argument("uniform_census: V must be >= 1");
  const auto sieve = arith::sieve_for(V);
  UniformCensus c;
  c.V = V;
  c.classes = 0;
  c.cyclic = 0;
  c.squarefree = 0;
  for (std::uint64_t n = 1; n <= V; ++n) {
    const auto f = arith::factorize(n, *sieve);
    c.classes += arith::abelian_group_count(f);
    c.cyclic += 1;
    if (arith::is_squarefree(f)) c.squarefree += 1;
  }
  return c;
}

}  // namespace latcensus::groups
