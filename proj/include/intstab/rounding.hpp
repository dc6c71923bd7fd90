#pragma once

// Directed rounding without touching the FPU control word.
//
// Every routine computes the round-to-nearest result and, where an error-free
// transformation (TwoSum, FMA residual) shows the result is inexact, steps one
// ulp in the requested direction. The outcome equals true round-down /
// round-up for +, -, *, / and sqrt, so results are thread-safe and
// reproducible. Near the underflow threshold the exact error is not
// representable and the result is widened unconditionally.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace intstab::rounding {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMax = std::numeric_limits<double>::max();
inline constexpr double kTiny = 0x1p-968;

inline double next_up(double x) {
  if (std::isnan(x) || x == kInf) return x;
  if (x == 0.0) return std::numeric_limits<double>::denorm_min();
  auto bits = std::bit_cast<std::uint64_t>(x);
  bits = x > 0.0 ? bits + 1 : bits - 1;
  return std::bit_cast<double>(bits);
}

inline double next_down(double x) { return -next_up(-x); }

// -0.0 and +0.0 compare equal but differ bitwise; all bounds leave here as +0.
inline double canon(double x) { return x + 0.0; }

inline double add_down(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) {
    if (std::isinf(a) || std::isinf(b)) return s;
    return s > 0.0 ? kMax : s;
  }
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return canon(err < 0.0 ? next_down(s) : s);
}

inline double add_up(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) {
    if (std::isinf(a) || std::isinf(b)) return s;
    return s < 0.0 ? -kMax : s;
  }
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return canon(err > 0.0 ? next_up(s) : s);
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// 0 * inf is taken as 0: interval bounds use the extended-real convention.
inline double mul_down(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (std::isinf(a) || std::isinf(b)) return p;
  if (std::isinf(p)) return p > 0.0 ? kMax : p;
  if (std::fabs(p) < kTiny) return canon(next_down(p));
  const double err = std::fma(a, b, -p);
  return canon(err < 0.0 ? next_down(p) : p);
}

inline double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (std::isinf(a) || std::isinf(b)) return p;
  if (std::isinf(p)) return p < 0.0 ? -kMax : p;
  if (std::fabs(p) < kTiny) return canon(next_up(p));
  const double err = std::fma(a, b, -p);
  return canon(err > 0.0 ? next_up(p) : p);
}

// Requires b != 0.
inline double div_down(double a, double b) {
  if (a == 0.0) return 0.0;
  const double q = a / b;
  if (std::isinf(a) || std::isinf(b)) return canon(q);
  if (std::isinf(q)) return q > 0.0 ? kMax : q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return canon(next_down(q));
  // a = q*b + r exactly; the true quotient is q + r/b.
  const double r = std::fma(-q, b, a);
  const bool below = r != 0.0 && ((r > 0.0) != (b > 0.0));
  return canon(below ? next_down(q) : q);
}

inline double div_up(double a, double b) {
  if (a == 0.0) return 0.0;
  const double q = a / b;
  if (std::isinf(a) || std::isinf(b)) return canon(q);
  if (std::isinf(q)) return q < 0.0 ? -kMax : q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return canon(next_up(q));
  const double r = std::fma(-q, b, a);
  const bool above = r != 0.0 && ((r > 0.0) == (b > 0.0));
  return canon(above ? next_up(q) : q);
}

// Requires x >= 0.
inline double sqrt_down(double x) {
  const double r = std::sqrt(x);
  if (x == 0.0 || std::isinf(x)) return canon(r);
  if (x < kTiny) return canon(next_down(r));
  const double e = std::fma(-r, r, x);
  return canon(e < 0.0 ? next_down(r) : r);
}

inline double sqrt_up(double x) {
  const double r = std::sqrt(x);
  if (x == 0.0 || std::isinf(x)) return canon(r);
  if (x < kTiny) return canon(next_up(r));
  const double e = std::fma(-r, r, x);
  return canon(e > 0.0 ? next_up(r) : r);
}

// libm transcendental results are trusted to 1 ulp; two steps cover the
// binade-boundary case where the ulp below is half the ulp above.
inline double widen_down(double x) { return next_down(next_down(x)); }
inline double widen_up(double x) { return next_up(next_up(x)); }

}  // namespace intstab::rounding
