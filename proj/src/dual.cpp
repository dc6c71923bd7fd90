#include "intstab/dual.hpp"

#include "intstab/kernels.hpp"

namespace intstab {

namespace {

std::size_t dim(const DualInterval& a, const DualInterval& b) {
  if (!a.is_constant() && !b.is_constant() && a.partials.size() != b.partials.size()) {
    throw Error(ErrorCode::dimension_mismatch, "dual numbers with different gradient sizes");
  }
  return a.is_constant() ? b.partials.size() : a.partials.size();
}

// Chain rule for a unary function with derivative enclosure `d`.
DualInterval chain(const Interval& value, const Interval& d, const DualInterval& a) {
  if (a.is_constant()) return DualInterval(value);
  std::vector<Interval> out(a.partials.size());
  kernels::scale(d, a.partials, out);
  return {value, std::move(out)};
}

}  // namespace

DualInterval DualInterval::variable(const Interval& v, std::size_t i, std::size_t n) {
  if (i >= n) throw Error(ErrorCode::dimension_mismatch, "variable index out of range");
  std::vector<Interval> d(n);
  d[i] = Interval(1.0);
  return {v, std::move(d)};
}

DualInterval operator+(const DualInterval& a, const DualInterval& b) {
  const std::size_t n = dim(a, b);
  const Interval v = a.value + b.value;
  if (a.is_constant()) return {v, b.partials};
  if (b.is_constant()) return {v, a.partials};
  std::vector<Interval> out(n);
  kernels::add(a.partials, b.partials, out);
  return {v, std::move(out)};
}

DualInterval operator-(const DualInterval& a, const DualInterval& b) {
  const std::size_t n = dim(a, b);
  const Interval v = a.value - b.value;
  if (b.is_constant()) return {v, a.partials};
  std::vector<Interval> out(n);
  if (a.is_constant()) {
    kernels::scale(Interval(-1.0), b.partials, out);
  } else {
    kernels::sub(a.partials, b.partials, out);
  }
  return {v, std::move(out)};
}

DualInterval operator*(const DualInterval& a, const DualInterval& b) {
  const std::size_t n = dim(a, b);
  const Interval v = a.value * b.value;
  if (a.is_constant() && b.is_constant()) return DualInterval(v);
  std::vector<Interval> out(n);
  if (a.is_constant()) {
    kernels::scale(a.value, b.partials, out);
  } else if (b.is_constant()) {
    kernels::scale(b.value, a.partials, out);
  } else {
    kernels::scale(b.value, a.partials, out);
    kernels::scale_add(a.value, b.partials, out);
  }
  return {v, std::move(out)};
}

DualInterval operator/(const DualInterval& a, const DualInterval& b) {
  const std::size_t n = dim(a, b);
  const Interval q = a.value / b.value;
  if (b.is_constant()) {
    if (a.is_constant()) return DualInterval(q);
    std::vector<Interval> out(n);
    kernels::scale(Interval(1.0) / b.value, a.partials, out);
    return {q, std::move(out)};
  }
  // (a' - q b') / b
  std::vector<Interval> out = a.is_constant() ? std::vector<Interval>(n) : a.partials;
  kernels::scale_add(-q, b.partials, out);
  kernels::scale(Interval(1.0) / b.value, out, out);
  return {q, std::move(out)};
}

DualInterval operator-(const DualInterval& a) { return chain(-a.value, Interval(-1.0), a); }

DualInterval sqr(const DualInterval& a) { return chain(sqr(a.value), scalar_mul(2.0, a.value), a); }

DualInterval sqrt(const DualInterval& a) {
  const Interval r = sqrt(a.value);
  if (a.is_constant()) return DualInterval(r);
  if (!(a.value.lo() > 0.0)) throw Error(ErrorCode::domain_error, "sqrt is not differentiable at 0");
  return chain(r, Interval(1.0) / scalar_mul(2.0, r), a);
}

DualInterval exp(const DualInterval& a) {
  const Interval e = exp(a.value);
  return chain(e, e, a);
}

DualInterval ln(const DualInterval& a) {
  const Interval l = ln(a.value);
  if (a.is_constant()) return DualInterval(l);
  if (!(a.value.lo() > 0.0)) throw Error(ErrorCode::domain_error, "ln is not differentiable at 0");
  return chain(l, Interval(1.0) / a.value, a);
}

DualInterval sin(const DualInterval& a) { return chain(sin(a.value), cos(a.value), a); }

DualInterval cos(const DualInterval& a) { return chain(cos(a.value), -sin(a.value), a); }

DualInterval pow(const DualInterval& a, int n) {
  const Interval v = pow(a.value, n);
  if (a.is_constant() || n == 0) return DualInterval(v);
  return chain(v, scalar_mul(static_cast<double>(n), pow(a.value, n - 1)), a);
}

}  // namespace intstab
