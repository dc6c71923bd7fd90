#include <atomic>
#include <cstdlib>
#include <cstring>

#include "intstab/kernels.hpp"

namespace intstab::kernels {

namespace {

const KernelTable* initial_table() {
  const char* env = std::getenv("INTSTAB_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_table();
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

void check_sizes(std::size_t a, std::size_t b, std::size_t out) {
  if (a != b || a != out) throw Error(ErrorCode::dimension_mismatch, "kernel operand sizes differ");
}

template <typename Span>
void check_nonempty(Span s) {
  for (const Interval& x : s) require_nonempty(x);
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

Isa active_isa() { return &active() == &scalar_table() ? Isa::scalar : Isa::avx2; }

bool select(Isa isa) {
  const KernelTable* t = isa == Isa::scalar ? &scalar_table() : avx2_table();
  if (t == nullptr) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

const char* isa_name(Isa isa) { return isa == Isa::scalar ? "scalar" : "avx2"; }

void add(std::span<const Interval> a, std::span<const Interval> b, std::span<Interval> out) {
  check_sizes(a.size(), b.size(), out.size());
  check_nonempty(a);
  check_nonempty(b);
  active().add(a.data(), b.data(), out.data(), out.size());
}

void sub(std::span<const Interval> a, std::span<const Interval> b, std::span<Interval> out) {
  check_sizes(a.size(), b.size(), out.size());
  check_nonempty(a);
  check_nonempty(b);
  active().sub(a.data(), b.data(), out.data(), out.size());
}

void mul(std::span<const Interval> a, std::span<const Interval> b, std::span<Interval> out) {
  check_sizes(a.size(), b.size(), out.size());
  check_nonempty(a);
  check_nonempty(b);
  active().mul(a.data(), b.data(), out.data(), out.size());
}

void scale(const Interval& s, std::span<const Interval> a, std::span<Interval> out) {
  check_sizes(a.size(), a.size(), out.size());
  require_nonempty(s);
  check_nonempty(a);
  active().scale(s, a.data(), out.data(), out.size());
}

void scale_add(const Interval& s, std::span<const Interval> a, std::span<Interval> acc) {
  check_sizes(a.size(), a.size(), acc.size());
  require_nonempty(s);
  check_nonempty(a);
  check_nonempty(acc);
  active().scale_add(s, a.data(), acc.data(), acc.size());
}

}  // namespace intstab::kernels
