// AVX2 + FMA interval kernels.
//
// Built with -mavx2 -mfma. Nothing in this file may call inline helpers
// shared with other translation units (rounding.hpp, Interval accessors):
// the linker could keep this file's AVX copy and run it on a CPU without
// AVX. Special lanes are handed to the scalar table instead.

#include <cstddef>
#include <cstdint>
#include <type_traits>

#include "intstab/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace intstab::kernels {

namespace {

static_assert(sizeof(Interval) == 2 * sizeof(double));
static_assert(std::is_standard_layout_v<Interval>);

const double* raw(const Interval* p) { return reinterpret_cast<const double*>(p); }
double* raw(Interval* p) { return reinterpret_cast<double*>(p); }

constexpr double kTiny = 0x1p-968;

inline __m256d abs4(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline bool all_finite(__m256d v) {
  const __m256d lt = _mm256_cmp_pd(abs4(v), _mm256_set1_pd(__builtin_inf()), _CMP_LT_OQ);
  return _mm256_movemask_pd(lt) == 0xF;
}

// Moves each lane one ulp: up where `up_lanes` is set, down elsewhere, but
// only in lanes selected by `step`. Lanes that step are never zero.
inline __m256d step_ulp(__m256d v, __m256d up_lanes, __m256d step) {
  const __m256d positive = _mm256_cmp_pd(v, _mm256_setzero_pd(), _CMP_GT_OQ);
  // Bit pattern grows when moving away from zero: up on positives, down on negatives.
  const __m256d grow = _mm256_xor_pd(_mm256_xor_pd(positive, up_lanes), _mm256_castsi256_pd(_mm256_set1_epi64x(-1)));
  const __m256i plus = _mm256_set1_epi64x(1);
  const __m256i minus = _mm256_set1_epi64x(-1);
  __m256i delta = _mm256_castpd_si256(_mm256_blendv_pd(_mm256_castsi256_pd(minus), _mm256_castsi256_pd(plus), grow));
  delta = _mm256_and_si256(delta, _mm256_castpd_si256(step));
  return _mm256_castsi256_pd(_mm256_add_epi64(_mm256_castpd_si256(v), delta));
}

inline __m256d canon(__m256d v) { return _mm256_add_pd(v, _mm256_setzero_pd()); }

// Lanes hold (lo, hi, lo, hi); lo lanes round down, hi lanes round up.
inline __m256d hi_lanes() { return _mm256_castsi256_pd(_mm256_set_epi64x(-1, 0, -1, 0)); }

// Sum of two lo/hi-interleaved vectors with outward rounding; false when a
// lane overflowed or an operand bound is infinite.
inline bool add_pairs(__m256d a, __m256d b, __m256d& out) {
  const __m256d s = _mm256_add_pd(a, b);
  if (!all_finite(s)) return false;
  const __m256d bb = _mm256_sub_pd(s, a);
  const __m256d err = _mm256_add_pd(_mm256_sub_pd(a, _mm256_sub_pd(s, bb)), _mm256_sub_pd(b, bb));
  const __m256d up = hi_lanes();
  const __m256d zero = _mm256_setzero_pd();
  const __m256d need_down = _mm256_andnot_pd(up, _mm256_cmp_pd(err, zero, _CMP_LT_OQ));
  const __m256d need_up = _mm256_and_pd(up, _mm256_cmp_pd(err, zero, _CMP_GT_OQ));
  out = canon(step_ulp(s, up, _mm256_or_pd(need_down, need_up)));
  return true;
}

// Product of one interval pair; false when the scalar path must decide.
inline bool mul_interval(const double* a, const double* b, double* out) {
  const __m256d a2 = _mm256_castpd128_pd256(_mm_loadu_pd(a));
  const __m256d b2 = _mm256_castpd128_pd256(_mm_loadu_pd(b));
  const __m256d va = _mm256_permute4x64_pd(a2, 0x50);  // lo lo hi hi
  const __m256d vb = _mm256_permute4x64_pd(b2, 0x44);  // lo hi lo hi
  if (!all_finite(va) || !all_finite(vb)) return false;
  const __m256d zero = _mm256_setzero_pd();
  const __m256d p = _mm256_mul_pd(va, vb);
  if (!all_finite(p)) return false;
  const __m256d nonzero_ops = _mm256_and_pd(_mm256_cmp_pd(va, zero, _CMP_NEQ_OQ), _mm256_cmp_pd(vb, zero, _CMP_NEQ_OQ));
  const __m256d tiny = _mm256_and_pd(nonzero_ops, _mm256_cmp_pd(abs4(p), _mm256_set1_pd(kTiny), _CMP_LT_OQ));
  if (_mm256_movemask_pd(tiny) != 0) return false;

  const __m256d err = _mm256_fmadd_pd(va, vb, _mm256_sub_pd(zero, p));
  const __m256d all = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
  const __m256d down = canon(step_ulp(p, zero, _mm256_cmp_pd(err, zero, _CMP_LT_OQ)));
  const __m256d up = canon(step_ulp(p, all, _mm256_cmp_pd(err, zero, _CMP_GT_OQ)));

  __m256d lo = _mm256_min_pd(down, _mm256_permute2f128_pd(down, down, 1));
  lo = _mm256_min_pd(lo, _mm256_permute_pd(lo, 0x5));
  __m256d hi = _mm256_max_pd(up, _mm256_permute2f128_pd(up, up, 1));
  hi = _mm256_max_pd(hi, _mm256_permute_pd(hi, 0x5));
  out[0] = _mm256_cvtsd_f64(lo);
  out[1] = _mm256_cvtsd_f64(hi);
  return true;
}

void add_avx2(const Interval* a, const Interval* b, Interval* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d r;
    if (add_pairs(_mm256_loadu_pd(raw(a + i)), _mm256_loadu_pd(raw(b + i)), r)) {
      _mm256_storeu_pd(raw(out + i), r);
    } else {
      scalar_table().add(a + i, b + i, out + i, 2);
    }
  }
  if (i < n) scalar_table().add(a + i, b + i, out + i, n - i);
}

void sub_avx2(const Interval* a, const Interval* b, Interval* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vb = _mm256_loadu_pd(raw(b + i));
    // a - b = a + (-hi(b), -lo(b))
    const __m256d neg_swapped = _mm256_xor_pd(_mm256_permute_pd(vb, 0x5), _mm256_set1_pd(-0.0));
    __m256d r;
    if (add_pairs(_mm256_loadu_pd(raw(a + i)), neg_swapped, r)) {
      _mm256_storeu_pd(raw(out + i), r);
    } else {
      scalar_table().sub(a + i, b + i, out + i, 2);
    }
  }
  if (i < n) scalar_table().sub(a + i, b + i, out + i, n - i);
}

void mul_avx2(const Interval* a, const Interval* b, Interval* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!mul_interval(raw(a + i), raw(b + i), raw(out + i))) {
      scalar_table().mul(a + i, b + i, out + i, 1);
    }
  }
}

void scale_avx2(const Interval& s, const Interval* a, Interval* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!mul_interval(raw(&s), raw(a + i), raw(out + i))) {
      scalar_table().scale(s, a + i, out + i, 1);
    }
  }
}

void scale_add_avx2(const Interval& s, const Interval* a, Interval* acc, std::size_t n) {
  constexpr std::size_t kChunk = 16;
  Interval tmp[kChunk];
  for (std::size_t base = 0; base < n; base += kChunk) {
    const std::size_t len = n - base < kChunk ? n - base : kChunk;
    scale_avx2(s, a + base, tmp, len);
    add_avx2(acc + base, tmp, acc + base, len);
  }
}

constexpr KernelTable kAvx2{"avx2", add_avx2, sub_avx2, mul_avx2, scale_avx2, scale_add_avx2};

}  // namespace

const KernelTable* avx2_table() {
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &kAvx2 : nullptr;
}

}  // namespace intstab::kernels

#else

namespace intstab::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace intstab::kernels

#endif
