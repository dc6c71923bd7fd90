// Reference interval kernels. The AVX2 variant must match these bit for bit.

#include <algorithm>

#include "intstab/kernels.hpp"
#include "intstab/rounding.hpp"

namespace intstab::kernels {

namespace {

namespace r = rounding;

Interval add_one(const Interval& a, const Interval& b) {
  return make_unchecked(r::add_down(a.lo(), b.lo()), r::add_up(a.hi(), b.hi()));
}

Interval sub_one(const Interval& a, const Interval& b) {
  return make_unchecked(r::sub_down(a.lo(), b.hi()), r::sub_up(a.hi(), b.lo()));
}

Interval mul_one(const Interval& a, const Interval& b) {
  const double lo = std::min({r::mul_down(a.lo(), b.lo()), r::mul_down(a.lo(), b.hi()),
                              r::mul_down(a.hi(), b.lo()), r::mul_down(a.hi(), b.hi())});
  const double hi = std::max({r::mul_up(a.lo(), b.lo()), r::mul_up(a.lo(), b.hi()),
                              r::mul_up(a.hi(), b.lo()), r::mul_up(a.hi(), b.hi())});
  return make_unchecked(lo, hi);
}

void add_scalar(const Interval* a, const Interval* b, Interval* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = add_one(a[i], b[i]);
}

void sub_scalar(const Interval* a, const Interval* b, Interval* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = sub_one(a[i], b[i]);
}

void mul_scalar(const Interval* a, const Interval* b, Interval* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mul_one(a[i], b[i]);
}

void scale_scalar(const Interval& s, const Interval* a, Interval* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mul_one(s, a[i]);
}

void scale_add_scalar(const Interval& s, const Interval* a, Interval* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = add_one(acc[i], mul_one(s, a[i]));
}

constexpr KernelTable kScalar{"scalar", add_scalar, sub_scalar, mul_scalar, scale_scalar,
                              scale_add_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace intstab::kernels
