#pragma once

// Forward-mode interval differentiation.

#include <cstddef>
#include <vector>

#include "intstab/interval.hpp"

namespace intstab {

/// A value together with an enclosure of its gradient with respect to the
/// n state variables. An empty `partials` vector means "does not depend on
/// the state" and behaves like an all-zero gradient.
struct DualInterval {
  Interval value;
  std::vector<Interval> partials;

  DualInterval() = default;
  DualInterval(const Interval& v) : value(v) {}  // NOLINT(google-explicit-constructor)
  DualInterval(const Interval& v, std::vector<Interval> d) : value(v), partials(std::move(d)) {}

  /// The i-th of n state variables at `v`: gradient is the i-th unit row.
  static DualInterval variable(const Interval& v, std::size_t i, std::size_t n);

  bool is_constant() const noexcept { return partials.empty(); }
};

DualInterval operator+(const DualInterval& a, const DualInterval& b);
DualInterval operator-(const DualInterval& a, const DualInterval& b);
DualInterval operator*(const DualInterval& a, const DualInterval& b);
DualInterval operator/(const DualInterval& a, const DualInterval& b);
DualInterval operator-(const DualInterval& a);

DualInterval sqr(const DualInterval& a);
DualInterval sqrt(const DualInterval& a);
DualInterval exp(const DualInterval& a);
DualInterval ln(const DualInterval& a);
DualInterval sin(const DualInterval& a);
DualInterval cos(const DualInterval& a);
DualInterval pow(const DualInterval& a, int n);

}  // namespace intstab
