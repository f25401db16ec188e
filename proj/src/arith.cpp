#include "latcensus/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "latcensus/constants.hpp"

namespace latcensus::arith {

FactoredInt FactoredInt::from_factors(std::vector<PrimePower> factors) {
  FactoredInt f;
  unsigned __int128 v = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& pp = factors[i];
    if (pp.exponent == 0) throw std::invalid_argument("FactoredInt: exponent must be >= 1");
    if (!is_prime(pp.prime)) throw std::invalid_argument("FactoredInt: non-prime factor");
    if (i > 0 && factors[i - 1].prime >= pp.prime)
      throw std::invalid_argument("FactoredInt: primes must be strictly increasing");
    for (unsigned e = 0; e < pp.exponent; ++e) {
      v *= pp.prime;
      if (v > UINT64_MAX) throw std::overflow_error("FactoredInt: value exceeds 64 bits");
    }
  }
  f.value_ = static_cast<std::uint64_t>(v);
  f.factors_ = std::move(factors);
  return f;
}

FactoredInt operator*(const FactoredInt& a, const FactoredInt& b) {
  std::vector<PrimePower> out;
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].prime < fb[j].prime)) {
      out.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].prime < fa[i].prime) {
      out.push_back(fb[j++]);
    } else {
      out.push_back({fa[i].prime, fa[i].exponent + fb[j].exponent});
      ++i;
      ++j;
    }
  }
  return FactoredInt::from_factors(std::move(out));
}

std::string to_string(const FactoredInt& f) {
  if (f.is_one()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : f.factors()) {
    if (!first) os << '*';
    first = false;
    os << p;
    if (e > 1) os << '^' << e;
  }
  return os.str();
}

SieveTable::SieveTable(std::uint32_t limit) : limit_(limit), spf_(std::size_t(limit) + 1, 0) {
  // Linear sieve: each composite is written once, by its smallest prime.
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes_) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

SieveTable build_sieve(std::uint64_t limit) {
  if (limit < 2) throw std::invalid_argument("build_sieve: limit must be >= 2");
  if (limit > UINT32_MAX) throw std::invalid_argument("build_sieve: limit exceeds 32-bit table");
  return SieveTable(static_cast<std::uint32_t>(limit));
}

std::shared_ptr<const SieveTable> shared_sieve(std::uint64_t limit) {
  static std::mutex mu;
  static std::shared_ptr<const SieveTable> cached;
  limit = std::max<std::uint64_t>(limit, 2);
  std::lock_guard lock(mu);
  if (!cached || cached->limit() < limit) {
    cached = std::make_shared<const SieveTable>(build_sieve(limit));
  }
  return cached;
}

std::uint64_t configured_sieve_limit() {
  if (const char* env = std::getenv("LATCENSUS_SIEVE_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v >= 2 && v <= UINT32_MAX) return v;
  }
  return kDefaultSieveLimit;
}

std::shared_ptr<const SieveTable> sieve_for(std::uint64_t V) {
  return shared_sieve(std::min(V, configured_sieve_limit()));
}

std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint64_t limit) {
  static std::mutex mu;
  static std::shared_ptr<const std::vector<std::uint32_t>> cached;
  static std::uint64_t cached_limit = 0;
  if (limit > UINT32_MAX) throw std::invalid_argument("primes_up_to: limit exceeds 32 bits");
  {
    std::lock_guard lock(mu);
    if (cached && cached_limit >= limit) {
      if (cached_limit == limit) return cached;
      auto end = std::upper_bound(cached->begin(), cached->end(), limit);
      return std::make_shared<const std::vector<std::uint32_t>>(cached->begin(), end);
    }
  }
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  auto result = std::make_shared<const std::vector<std::uint32_t>>(std::move(primes));
  std::lock_guard lock(mu);
  if (!cached || cached_limit < limit) {
    cached = result;
    cached_limit = limit;
  }
  return result;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

void trial_divide(std::uint64_t& n, std::uint64_t p, std::vector<PrimePower>& out) {
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (e) out.push_back({p, e});
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit n.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FactoredInt factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<PrimePower> out;
  const std::uint64_t original = n;
  trial_divide(n, 2, out);
  for (std::uint64_t p = 3; static_cast<unsigned __int128>(p) * p <= n; p += 2) {
    trial_divide(n, p, out);
  }
  if (n > 1) out.push_back({n, 1});
  return FactoredInt(original, std::move(out));
}

FactoredInt factorize(std::uint64_t n, const SieveTable& sieve) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  if (n > sieve.limit()) return factorize(n);
  std::vector<PrimePower> out;
  auto k = static_cast<std::uint32_t>(n);
  while (k > 1) {
    const std::uint32_t p = sieve.smallest_prime_factor(k);
    unsigned e = 0;
    while (k % p == 0) {
      k /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return FactoredInt(n, std::move(out));
}

int mobius(const FactoredInt& n) {
  int sign = 1;
  for (const auto& pp : n.factors()) {
    if (pp.exponent >= 2) return 0;
    sign = -sign;
  }
  return sign;
}

std::uint64_t euler_phi(const FactoredInt& n) {
  std::uint64_t r = 1;
  for (const auto& [p, e] : n.factors()) {
    r *= p - 1;
    for (unsigned i = 1; i < e; ++i) r *= p;
  }
  return r;
}

unsigned omega(const FactoredInt& n) { return static_cast<unsigned>(n.factors().size()); }

bool is_squarefree(const FactoredInt& n) {
  return std::all_of(n.factors().begin(), n.factors().end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

mpz_class ipow(std::uint64_t base, unsigned exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

mpq_class f_n(unsigned n, const FactoredInt& d) {
  if (n < 2) throw std::invalid_argument("f_n: n must be >= 2");
  if (!is_squarefree(d)) return 0;
  mpq_class r = 1;
  for (const auto& pp : d.factors()) {
    const mpz_class pn1 = ipow(pp.prime, n - 1);
    r *= mpq_class(pn1 - 1, pn1 * pp.prime - pn1);
  }
  r.canonicalize();
  return r;
}

mpz_class partitions(unsigned k) {
  static std::mutex mu;
  static std::vector<mpz_class> memo{1};
  std::lock_guard lock(mu);
  while (memo.size() <= k) {
    const long m = static_cast<long>(memo.size());
    mpz_class sum = 0;
    for (long j = 1;; ++j) {
      const long g1 = j * (3 * j - 1) / 2;
      if (g1 > m) break;
      const long g2 = j * (3 * j + 1) / 2;
      mpz_class term = memo[m - g1];
      if (g2 <= m) term += memo[m - g2];
      if (j % 2 == 1) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    memo.push_back(sum);
  }
  return memo[k];
}

mpz_class abelian_group_count(const FactoredInt& n) {
  mpz_class r = 1;
  for (const auto& pp : n.factors()) r *= partitions(pp.exponent);
  return r;
}

namespace {

template <class Keep>
mpq_class exact_reciprocal_phi_sum(std::uint64_t t, Keep keep) {
  if (t == 0) return 0;
  auto sieve = sieve_for(t);
  mpq_class sum = 0;
  for (std::uint64_t d = 1; d <= t; ++d) {
    const FactoredInt f = factorize(d, *sieve);
    if (keep(f)) sum += mpq_class(1, mpz_class(static_cast<unsigned long>(euler_phi(f))));
  }
  sum.canonicalize();
  return sum;
}

template <class Keep>
RationalSum reciprocal_phi_sum(std::uint64_t t, Keep keep) {
  RationalSum out;
  if (t <= kExactSumLimit) {
    out.exact = exact_reciprocal_phi_sum(t, keep);
    out.approx = ErrBoundedReal::from_rational(*out.exact);
    return out;
  }
  auto sieve = sieve_for(t);
  // Each term 1/phi(d) is one correctly rounded division of exact operands.
  CompensatedSum acc(ErrBoundedReal::kEps);
  for (std::uint64_t d = 1; d <= t; ++d) {
    const FactoredInt f = factorize(d, *sieve);
    if (keep(f)) acc.add(1.0L / static_cast<long double>(euler_phi(f)));
  }
  out.approx = acc.result();
  return out;
}

}  // namespace

RationalSum landau_sum(std::uint64_t t) {
  return reciprocal_phi_sum(t, [](const FactoredInt&) { return true; });
}

mpq_class landau_sum_exact(std::uint64_t t) {
  return exact_reciprocal_phi_sum(t, [](const FactoredInt&) { return true; });
}

RationalSum ward_sum(std::uint64_t V) {
  return reciprocal_phi_sum(V, [](const FactoredInt& f) { return is_squarefree(f); });
}

mpq_class ward_sum_exact(std::uint64_t V) {
  return exact_reciprocal_phi_sum(V, [](const FactoredInt& f) { return is_squarefree(f); });
}

ErrBoundedReal euler_gamma() { return {0.57721566490153286061L, 1e-19L}; }

ErrBoundedReal landau_prediction(std::uint64_t t, long double tol) {
  if (t == 0) throw std::invalid_argument("landau_prediction: t must be >= 1");
  constants::EulerOptions opts;
  opts.tol = tol / 4;
  const ErrBoundedReal prime_sum = constants::landau_prime_sum(opts).value;
  const ErrBoundedReal logt = log(ErrBoundedReal::exact(static_cast<long double>(t)));
  return constants::theta() * (logt + euler_gamma() - prime_sum);
}

std::uint64_t squarefree_coprime_count(std::uint64_t x, const FactoredInt& d) {
  if (x == 0) return 0;
  std::vector<bool> square_divisible(x + 1, false);
  for (std::uint64_t p = 2; p * p <= x; ++p) {
    for (std::uint64_t m = p * p; m <= x; m += p * p) square_divisible[m] = true;
  }
  std::uint64_t count = 0;
  for (std::uint64_t k = 1; k <= x; ++k) {
    if (square_divisible[k]) continue;
    bool coprime = true;
    for (const auto& pp : d.factors()) {
      if (k % pp.prime == 0) {
        coprime = false;
        break;
      }
    }
    if (coprime) ++count;
  }
  return count;
}

ErrBoundedReal squarefree_coprime_prediction(std::uint64_t x, const FactoredInt& d) {
  const ErrBoundedReal pi = ErrBoundedReal::rounded(std::numbers::pi_v<long double>);
  ErrBoundedReal r = ErrBoundedReal::exact(6.0L * static_cast<long double>(x)) / (pi * pi);
  for (const auto& pp : d.factors()) {
    const auto p = static_cast<long double>(pp.prime);
    r *= ErrBoundedReal::exact(p) / ErrBoundedReal::exact(p + 1.0L);
  }
  return r;
}

}  // namespace latcensus::arith
