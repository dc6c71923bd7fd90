#pragma once

#include <iosfwd>
#include <string>

#include "intstab/error.hpp"

namespace intstab {

/// Closed interval [lo, hi] over the extended reals with outward-rounded
/// arithmetic. The empty set is a distinct value that every operation rejects.
class Interval {
 public:
  /// The degenerate interval [0, 0].
  constexpr Interval() = default;
  Interval(double value);  // NOLINT(google-explicit-constructor)
  Interval(double lo, double hi);

  static Interval empty();
  static Interval entire();
  /// Smallest interval containing both reals, in any order.
  static Interval hull(double a, double b);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  bool is_empty() const noexcept { return lo_ > hi_; }
  bool is_degenerate() const noexcept { return lo_ == hi_; }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains_zero() const noexcept { return lo_ <= 0.0 && 0.0 <= hi_; }
  double mid() const;

  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  struct Unchecked {};
  constexpr Interval(double lo, double hi, Unchecked) : lo_(lo), hi_(hi) {}

  friend Interval make_unchecked(double lo, double hi);

  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Builds an interval without validation; used by kernels that already
/// guarantee lo <= hi.
Interval make_unchecked(double lo, double hi);

/// Throws EmptyOperand when `x` is empty.
void require_nonempty(const Interval& x);

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Throws DivisionByZeroInterval when 0 lies in `b`.
Interval operator/(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

/// Real multiple of an interval: [l*lo, l*hi] for l >= 0, [l*hi, l*lo] otherwise.
Interval scalar_mul(double lambda, const Interval& x);

double width(const Interval& x);
/// max(|lo|, |hi|).
double abs(const Interval& x);
/// min |t| over t in x.
double mig(const Interval& x);

Interval intersect(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);

bool subset(const Interval& a, const Interval& b);
/// Strict on both bounds; a degenerate `b` only admits an identical `a`.
bool interior_subset(const Interval& a, const Interval& b);

// Elementary functions. Each result encloses the exact image.
Interval sqr(const Interval& x);
/// Throws DomainError when x.lo() < 0.
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
/// Throws DomainError when x.lo() < 0; ln(0) is -inf.
Interval ln(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
/// Integer power; negative exponents divide, so 0 in x is an error for them.
Interval pow(const Interval& x, int n);

/// Outward enclosure of pi, one ulp wide.
Interval pi_enclosure();

/// Enclosure of a decimal literal such as "2.4" or "1e-3". Exactly
/// representable values give a degenerate interval.
Interval decimal_enclosure(const std::string& text);

std::ostream& operator<<(std::ostream& os, const Interval& x);

}  // namespace intstab
