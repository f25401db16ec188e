#include "latcensus/bounded_real.hpp"

#include <cstdio>
#include <stdexcept>

namespace latcensus {

namespace {

constexpr long double kEps = ErrBoundedReal::kEps;

// Error terms are themselves computed in floating point; inflate them a
// little so the bound stays an upper bound.
long double inflate(long double e) { return e * (1.0L + 4.0L * kEps); }

}  // namespace

long double to_long_double(const mpz_class& z) {
  if (z == 0) return 0.0L;
  const int sign = sgn(z);
  mpz_class a = abs(z);
  const std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
  long shift = 0;
  if (bits > 64) {
    shift = static_cast<long>(bits - 64);
    mpz_class top;
    mpz_fdiv_q_2exp(top.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    a = top;
  }
  // a now fits in 64 bits; assemble from two 32-bit halves.
  mpz_class hi;
  mpz_fdiv_q_2exp(hi.get_mpz_t(), a.get_mpz_t(), 32);
  mpz_class lo = a - (hi << 32);
  long double v = static_cast<long double>(hi.get_ui()) * 4294967296.0L +
                  static_cast<long double>(lo.get_ui());
  return sign * std::ldexp(v, static_cast<int>(shift));
}

ErrBoundedReal ErrBoundedReal::from_integer(const mpz_class& z) {
  const long double v = to_long_double(z);
  const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
  return {v, bits <= 64 ? 0.0L : std::fabs(v) * kEps};
}

ErrBoundedReal ErrBoundedReal::from_rational(const mpq_class& q) {
  const ErrBoundedReal num = from_integer(q.get_num());
  const ErrBoundedReal den = from_integer(q.get_den());
  return num / den;
}

ErrBoundedReal& ErrBoundedReal::operator+=(const ErrBoundedReal& o) {
  value += o.value;
  err = inflate(err + o.err) + std::fabs(value) * kEps;
  return *this;
}

ErrBoundedReal& ErrBoundedReal::operator-=(const ErrBoundedReal& o) { return *this += -o; }

ErrBoundedReal& ErrBoundedReal::operator*=(const ErrBoundedReal& o) {
  const long double a = value, ea = err;
  value = a * o.value;
  err = inflate(std::fabs(a) * o.err + std::fabs(o.value) * ea + ea * o.err) +
        std::fabs(value) * kEps;
  return *this;
}

ErrBoundedReal& ErrBoundedReal::operator/=(const ErrBoundedReal& o) {
  const long double b = std::fabs(o.value);
  if (!(b > o.err)) throw std::domain_error("ErrBoundedReal: divisor interval contains zero");
  const long double a = value, ea = err;
  value = a / o.value;
  err = inflate((std::fabs(a) * o.err + b * ea) / (b * (b - o.err))) + std::fabs(value) * kEps;
  return *this;
}

ErrBoundedReal operator+(ErrBoundedReal a, const ErrBoundedReal& b) { return a += b; }
ErrBoundedReal operator-(ErrBoundedReal a, const ErrBoundedReal& b) { return a -= b; }
ErrBoundedReal operator*(ErrBoundedReal a, const ErrBoundedReal& b) { return a *= b; }
ErrBoundedReal operator/(ErrBoundedReal a, const ErrBoundedReal& b) { return a /= b; }

ErrBoundedReal reciprocal(const ErrBoundedReal& x) { return ErrBoundedReal::exact(1.0L) / x; }

ErrBoundedReal log(const ErrBoundedReal& x) {
  if (!(x.lower() > 0.0L)) throw std::domain_error("ErrBoundedReal: log of non-positive interval");
  const long double v = std::log(x.value);
  // |log(x +- e) - log x| <= e / (x - e)
  const long double prop = x.err / (x.value - x.err);
  const long double slack = 4.0L * kEps * std::fmax(std::fabs(v), std::numeric_limits<long double>::min());
  return {v, inflate(prop) + slack};
}

ErrBoundedReal exp(const ErrBoundedReal& x) {
  const long double v = std::exp(x.value);
  const long double prop = v * std::expm1(x.err);
  return {v, inflate(prop) + 4.0L * kEps * v};
}

ErrBoundedReal pow(const ErrBoundedReal& x, unsigned k) {
  ErrBoundedReal r = ErrBoundedReal::exact(1.0L);
  ErrBoundedReal base = x;
  while (k > 0) {
    if (k & 1u) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

std::string to_string(const ErrBoundedReal& x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.18Lg +- %.3Lg", x.value, x.err);
  return buf;
}

ErrBoundedReal CompensatedSum::result() const {
  const long double n = static_cast<long double>(count_);
  const long double e = (2.0L * kEps + n * kEps * kEps + term_rel_) * abs_total_;
  return {sum_ + comp_, inflate(e)};
}

}  // namespace latcensus
