#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <gmpxx.h>

namespace latcensus {

/// A long double value together with an absolute error bound: the exact
/// quantity lies in [value - err, value + err].
///
/// Every arithmetic operation widens the bound by the propagated input
/// errors and by one machine epsilon of the result for its own rounding.
/// long double on the supported targets has a 64-bit significand.
struct ErrBoundedReal {
  long double value = 0.0L;
  long double err = 0.0L;

  static constexpr long double kEps = std::numeric_limits<long double>::epsilon();

  constexpr ErrBoundedReal() = default;
  constexpr ErrBoundedReal(long double v, long double e) : value(v), err(e) {}

  // Exactly representable input (small integers, dyadic rationals).
  static constexpr ErrBoundedReal exact(long double v) { return {v, 0.0L}; }
  // Result of a single rounded operation.
  static ErrBoundedReal rounded(long double v) { return {v, std::fabs(v) * kEps}; }
  static ErrBoundedReal from_integer(const mpz_class& z);
  static ErrBoundedReal from_rational(const mpq_class& q);

  long double lower() const { return value - err; }
  long double upper() const { return value + err; }
  bool contains(long double x) const { return x >= lower() && x <= upper(); }
  // True when the two enclosures share a point.
  bool overlaps(const ErrBoundedReal& o) const {
    return lower() <= o.upper() && o.lower() <= upper();
  }
  bool is_finite() const { return std::isfinite(value) && std::isfinite(err); }

  ErrBoundedReal operator-() const { return {-value, err}; }
  ErrBoundedReal& operator+=(const ErrBoundedReal& o);
  ErrBoundedReal& operator-=(const ErrBoundedReal& o);
  ErrBoundedReal& operator*=(const ErrBoundedReal& o);
  ErrBoundedReal& operator/=(const ErrBoundedReal& o);
};

ErrBoundedReal operator+(ErrBoundedReal a, const ErrBoundedReal& b);
ErrBoundedReal operator-(ErrBoundedReal a, const ErrBoundedReal& b);
ErrBoundedReal operator*(ErrBoundedReal a, const ErrBoundedReal& b);
ErrBoundedReal operator/(ErrBoundedReal a, const ErrBoundedReal& b);

ErrBoundedReal reciprocal(const ErrBoundedReal& x);
// log and exp fold 4 ulps of libm slack into the bound.
ErrBoundedReal log(const ErrBoundedReal& x);
ErrBoundedReal exp(const ErrBoundedReal& x);
ErrBoundedReal pow(const ErrBoundedReal& x, unsigned k);

std::string to_string(const ErrBoundedReal& x);

// Nearest long double to z, within one ulp.
long double to_long_double(const mpz_class& z);

/// Neumaier-compensated running sum of nonnegative, individually rounded
/// terms. `relative_term_err` is the relative error of each added term.
class CompensatedSum {
 public:
  explicit CompensatedSum(long double relative_term_err = ErrBoundedReal::kEps)
      : term_rel_(relative_term_err) {}

  void add(long double term) {
    long double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term)) {
      comp_ += (sum_ - t) + term;
    } else {
      comp_ += (term - t) + sum_;
    }
    sum_ = t;
    abs_total_ += std::fabs(term);
    ++count_;
  }

  ErrBoundedReal result() const;
  std::uint64_t count() const { return count_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
  long double abs_total_ = 0.0L;
  long double term_rel_;
  std::uint64_t count_ = 0;
};

}  // namespace latcensus
