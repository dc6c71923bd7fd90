#include "intstab/interval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>

#include "intstab/rounding.hpp"

namespace intstab {

namespace r = rounding;

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::empty_operand: return "EmptyOperand";
    case ErrorCode::division_by_zero_interval: return "DivisionByZeroInterval";
    case ErrorCode::domain_error: return "DomainError";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::unknown_identifier: return "UnknownIdentifier";
    case ErrorCode::arity_error: return "ArityError";
    case ErrorCode::centre_residual_too_large: return "CentreResidualTooLarge";
    case ErrorCode::centre_outside_box: return "CentreOutsideBox";
    case ErrorCode::not_contained: return "NotContained";
    case ErrorCode::not_proven: return "NotProven";
    case ErrorCode::invalid_domain: return "InvalidDomain";
    case ErrorCode::io_error: return "IOError";
    case ErrorCode::bad_projection: return "BadProjection";
  }
  return "Unknown";
}

Interval::Interval(double value) : Interval(value, value) {}

Interval::Interval(double lo, double hi) : lo_(r::canon(lo)), hi_(r::canon(hi)) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == r::kInf || hi == -r::kInf) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "invalid interval bounds [%.17g, %.17g]", lo, hi);
    throw Error(ErrorCode::invalid_argument, buf);
  }
}

Interval Interval::empty() { return Interval(r::kInf, -r::kInf, Unchecked{}); }
Interval Interval::entire() { return Interval(-r::kInf, r::kInf, Unchecked{}); }

Interval Interval::hull(double a, double b) { return a <= b ? Interval(a, b) : Interval(b, a); }

Interval make_unchecked(double lo, double hi) { return Interval(lo, hi, Interval::Unchecked{}); }

double Interval::mid() const {
  require_nonempty(*this);
  if (lo_ == -r::kInf && hi_ == r::kInf) return 0.0;
  if (lo_ == -r::kInf) return -r::kMax;
  if (hi_ == r::kInf) return r::kMax;
  const double m = 0.5 * lo_ + 0.5 * hi_;
  return std::clamp(m, lo_, hi_);
}

void require_nonempty(const Interval& x) {
  if (x.is_empty()) throw Error(ErrorCode::empty_operand, "operation on the empty interval");
}

Interval& Interval::operator+=(const Interval& rhs) { return *this = *this + rhs; }
Interval& Interval::operator-=(const Interval& rhs) { return *this = *this - rhs; }
Interval& Interval::operator*=(const Interval& rhs) { return *this = *this * rhs; }
Interval& Interval::operator/=(const Interval& rhs) { return *this = *this / rhs; }

Interval operator+(const Interval& a, const Interval& b) {
  require_nonempty(a);
  require_nonempty(b);
  return make_unchecked(r::add_down(a.lo(), b.lo()), r::add_up(a.hi(), b.hi()));
}

Interval operator-(const Interval& a, const Interval& b) {
  require_nonempty(a);
  require_nonempty(b);
  return make_unchecked(r::sub_down(a.lo(), b.hi()), r::sub_up(a.hi(), b.lo()));
}

Interval operator-(const Interval& a) {
  require_nonempty(a);
  return make_unchecked(r::canon(-a.hi()), r::canon(-a.lo()));
}

Interval operator*(const Interval& a, const Interval& b) {
  require_nonempty(a);
  require_nonempty(b);
  const double lo = std::min({r::mul_down(a.lo(), b.lo()), r::mul_down(a.lo(), b.hi()),
                              r::mul_down(a.hi(), b.lo()), r::mul_down(a.hi(), b.hi())});
  const double hi = std::max({r::mul_up(a.lo(), b.lo()), r::mul_up(a.lo(), b.hi()),
                              r::mul_up(a.hi(), b.lo()), r::mul_up(a.hi(), b.hi())});
  return make_unchecked(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
  require_nonempty(a);
  require_nonempty(b);
  if (b.contains_zero()) {
    throw Error(ErrorCode::division_by_zero_interval, "divisor interval contains 0");
  }
  const double lo = std::min({r::div_down(a.lo(), b.lo()), r::div_down(a.lo(), b.hi()),
                              r::div_down(a.hi(), b.lo()), r::div_down(a.hi(), b.hi())});
  const double hi = std::max({r::div_up(a.lo(), b.lo()), r::div_up(a.lo(), b.hi()),
                              r::div_up(a.hi(), b.lo()), r::div_up(a.hi(), b.hi())});
  return make_unchecked(lo, hi);
}

Interval scalar_mul(double lambda, const Interval& x) {
  require_nonempty(x);
  if (std::isnan(lambda)) throw Error(ErrorCode::invalid_argument, "NaN scalar");
  if (lambda >= 0.0) return make_unchecked(r::mul_down(lambda, x.lo()), r::mul_up(lambda, x.hi()));
  return make_unchecked(r::mul_down(lambda, x.hi()), r::mul_up(lambda, x.lo()));
}

double width(const Interval& x) {
  require_nonempty(x);
  return r::sub_up(x.hi(), x.lo());
}

double abs(const Interval& x) {
  require_nonempty(x);
  return std::max(std::fabs(x.lo()), std::fabs(x.hi()));
}

double mig(const Interval& x) {
  require_nonempty(x);
  if (x.contains_zero()) return 0.0;
  return std::min(std::fabs(x.lo()), std::fabs(x.hi()));
}

Interval intersect(const Interval& a, const Interval& b) {
  require_nonempty(a);
  require_nonempty(b);
  const double lo = std::max(a.lo(), b.lo());
  const double hi = std::min(a.hi(), b.hi());
  if (lo > hi) return Interval::empty();
  return make_unchecked(lo, hi);
}

Interval hull(const Interval& a, const Interval& b) {
  require_nonempty(a);
  require_nonempty(b);
  return make_unchecked(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

bool subset(const Interval& a, const Interval& b) {
  require_nonempty(a);
  require_nonempty(b);
  return b.lo() <= a.lo() && a.hi() <= b.hi();
}

bool interior_subset(const Interval& a, const Interval& b) {
  require_nonempty(a);
  require_nonempty(b);
  if (b.is_degenerate()) return a == b;
  return b.lo() < a.lo() && a.hi() < b.hi();
}

// ---------------------------------------------------------------------------
// Elementary functions

Interval sqr(const Interval& x) {
  require_nonempty(x);
  const double lo = mig(x);
  const double hi = abs(x);
  return make_unchecked(r::mul_down(lo, lo), r::mul_up(hi, hi));
}

Interval sqrt(const Interval& x) {
  require_nonempty(x);
  if (x.lo() < 0.0) throw Error(ErrorCode::domain_error, "sqrt of an interval reaching below 0");
  return make_unchecked(r::sqrt_down(x.lo()), r::sqrt_up(x.hi()));
}

namespace {

double exp_down(double t) {
  if (t == 0.0) return 1.0;
  if (t == -r::kInf) return 0.0;
  return std::max(0.0, r::widen_down(std::exp(t)));
}

double exp_up(double t) {
  if (t == 0.0) return 1.0;
  if (t == -r::kInf) return 0.0;
  return r::widen_up(std::exp(t));
}

double ln_down(double t) {
  if (t == 1.0) return 0.0;
  if (t == 0.0) return -r::kInf;
  if (t == r::kInf) return r::kMax;
  return r::widen_down(std::log(t));
}

double ln_up(double t) {
  if (t == 1.0) return 0.0;
  if (t == r::kInf) return r::kInf;
  return r::widen_up(std::log(t));
}

// Point enclosure of sin/cos at t, clamped to [-1, 1].
Interval trig_point(double (*fn)(double), double t, double at_zero) {
  if (t == 0.0) return Interval(at_zero);
  const double v = fn(t);
  return make_unchecked(std::max(-1.0, r::widen_down(v)), std::min(1.0, r::widen_up(v)));
}

// True when [u_lo, u_hi] may contain a real of the form 2k + offset.
bool may_hit(double u_lo, double u_hi, double offset) {
  const double k_lo = std::ceil(r::mul_down(r::sub_down(u_lo, offset), 0.5));
  const double k_hi = std::floor(r::mul_up(r::sub_up(u_hi, offset), 0.5));
  return k_lo <= k_hi;
}

// sin and cos share the analysis: extrema sit at u*pi where u = 2k + offset.
Interval periodic(const Interval& x, double (*fn)(double), double at_zero, double max_offset,
                  double min_offset) {
  require_nonempty(x);
  const Interval full(-1.0, 1.0);
  if (!std::isfinite(x.lo()) || !std::isfinite(x.hi())) return full;
  if (abs(x) > 1e15) return full;
  const Interval pi = pi_enclosure();
  if (width(x) >= r::mul_down(2.0, pi.lo())) return full;

  const Interval u = x / pi;
  const Interval a = trig_point(fn, x.lo(), at_zero);
  const Interval b = trig_point(fn, x.hi(), at_zero);
  double lo = std::min(a.lo(), b.lo());
  double hi = std::max(a.hi(), b.hi());
  if (may_hit(u.lo(), u.hi(), max_offset)) hi = 1.0;
  if (may_hit(u.lo(), u.hi(), min_offset)) lo = -1.0;
  return make_unchecked(lo, hi);
}

double sin_fn(double t) { return std::sin(t); }
double cos_fn(double t) { return std::cos(t); }

// Positive base only; each partial product is rounded the same way, so the
// chain stays a bound in that direction.
double pow_pos(double base, int n, bool up) {
  double result = 1.0;
  double acc = base;
  while (n > 0) {
    if (n & 1) result = up ? r::mul_up(result, acc) : r::mul_down(result, acc);
    n >>= 1;
    if (n > 0) acc = up ? r::mul_up(acc, acc) : r::mul_down(acc, acc);
  }
  return result;
}

}  // namespace

Interval exp(const Interval& x) {
  require_nonempty(x);
  return make_unchecked(exp_down(x.lo()), exp_up(x.hi()));
}

Interval ln(const Interval& x) {
  require_nonempty(x);
  if (x.lo() < 0.0 || x.hi() <= 0.0) {
    throw Error(ErrorCode::domain_error, "ln of an interval reaching 0 or below");
  }
  return make_unchecked(ln_down(x.lo()), ln_up(x.hi()));
}

Interval sin(const Interval& x) { return periodic(x, sin_fn, 0.0, 0.5, 1.5); }
Interval cos(const Interval& x) { return periodic(x, cos_fn, 1.0, 0.0, 1.0); }

Interval pow(const Interval& x, int n) {
  require_nonempty(x);
  if (n == 0) return Interval(1.0);
  if (n < 0) return Interval(1.0) / pow(x, -n);
  if (n == 1) return x;
  if (n % 2 == 0) {
    return make_unchecked(pow_pos(mig(x), n, false), pow_pos(abs(x), n, true));
  }
  const double lo = x.lo() >= 0.0 ? pow_pos(x.lo(), n, false) : -pow_pos(-x.lo(), n, true);
  const double hi = x.hi() >= 0.0 ? pow_pos(x.hi(), n, true) : -pow_pos(-x.hi(), n, false);
  return make_unchecked(r::canon(lo), r::canon(hi));
}

Interval pi_enclosure() {
  // 0x1.921fb54442d18p+1 is the double just below pi.
  constexpr double pi_lo = 0x1.921fb54442d18p+1;
  return make_unchecked(pi_lo, r::next_up(pi_lo));
}

namespace {

using u128 = unsigned __int128;
constexpr u128 kTwo53 = u128{1} << 53;

// Decimal significand/exponent of a literal; nullopt-like `ok=false` when the
// digits do not fit, in which case the caller widens.
struct Decimal {
  bool ok = true;
  u128 digits = 0;
  long exp10 = 0;
};

Decimal scan_decimal(const std::string& text) {
  Decimal d;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) break;
    if (d.digits > (~u128{0}) / 20) {
      // Digits beyond what fits: only zeros keep the value exact.
      if (c != '0') d.ok = false;
      if (!seen_point) ++d.exp10;
      continue;
    }
    d.digits = d.digits * 10 + static_cast<unsigned>(c - '0');
    if (seen_point) --d.exp10;
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    d.exp10 += std::strtol(text.c_str() + i + 1, nullptr, 10);
  }
  return d;
}

bool fits_53_bits_after_twos(u128 v) {
  while (v != 0 && (v & 1) == 0) v >>= 1;
  return v < kTwo53;
}

bool decimal_is_exact(Decimal d) {
  if (!d.ok) return false;
  if (d.digits == 0) return true;
  while (d.digits % 10 == 0) {
    d.digits /= 10;
    ++d.exp10;
  }
  if (d.exp10 >= 0) {
    u128 v = d.digits;
    for (long k = 0; k < d.exp10; ++k) {
      if (v > (~u128{0}) / 5) return false;
      v *= 5;  // the matching power of two only moves the exponent
    }
    return fits_53_bits_after_twos(v);
  }
  u128 v = d.digits;
  for (long k = 0; k < -d.exp10; ++k) {
    if (v % 5 != 0) return false;
    v /= 5;
  }
  return fits_53_bits_after_twos(v);
}

}  // namespace

Interval decimal_enclosure(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || std::isnan(v)) {
    throw Error(ErrorCode::invalid_argument, "not a decimal literal: '" + text + "'");
  }
  const bool normal = v == 0.0 || (std::isfinite(v) && std::fabs(v) >= std::numeric_limits<double>::min());
  if (normal && decimal_is_exact(scan_decimal(text))) return Interval(v);
  if (std::isinf(v)) return v > 0 ? make_unchecked(r::kMax, r::kInf) : make_unchecked(-r::kInf, -r::kMax);
  return make_unchecked(r::next_down(v), r::next_up(v));
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  if (x.is_empty()) return os << "[empty]";
  char buf[80];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", x.lo(), x.hi());
  return os << buf;
}

}  // namespace intstab
