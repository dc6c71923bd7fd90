#pragma once

// Batched interval kernels.
//
// The scalar table is the reference implementation. The AVX2 table (built
// when the compiler supports it and selected at runtime when the CPU has
// AVX2+FMA) must produce bit-identical results; tests/test_kernels.cpp checks
// this on random and edge-case inputs. Lanes that hit overflow, underflow or
// infinite bounds are delegated to the scalar path.
//
// Set INTSTAB_KERNELS=scalar in the environment to force the reference path.

#include <cstddef>
#include <span>

#include "intstab/interval.hpp"

namespace intstab::kernels {

struct KernelTable {
  const char* name;
  // out[i] = a[i] + b[i]
  void (*add)(const Interval* a, const Interval* b, Interval* out, std::size_t n);
  // out[i] = a[i] - b[i]
  void (*sub)(const Interval* a, const Interval* b, Interval* out, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*mul)(const Interval* a, const Interval* b, Interval* out, std::size_t n);
  // out[i] = s * a[i]
  void (*scale)(const Interval& s, const Interval* a, Interval* out, std::size_t n);
  // acc[i] = acc[i] + s * a[i], product rounded before the sum
  void (*scale_add)(const Interval& s, const Interval* a, Interval* acc, std::size_t n);
};

enum class Isa { scalar, avx2 };

const KernelTable& scalar_table();
/// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_table();

/// Table used by Box / IntervalMatrix / Jacobian code.
const KernelTable& active();
Isa active_isa();
/// Returns false (and leaves the selection alone) if `isa` is unavailable.
bool select(Isa isa);
const char* isa_name(Isa isa);

// Span front-ends over the active table; sizes must match.
void add(std::span<const Interval> a, std::span<const Interval> b, std::span<Interval> out);
void sub(std::span<const Interval> a, std::span<const Interval> b, std::span<Interval> out);
void mul(std::span<const Interval> a, std::span<const Interval> b, std::span<Interval> out);
void scale(const Interval& s, std::span<const Interval> a, std::span<Interval> out);
void scale_add(const Interval& s, std::span<const Interval> a, std::span<Interval> acc);

}  // namespace intstab::kernels
