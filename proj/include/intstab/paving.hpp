#pragma once

// Inner approximation of the stability region of a parametrised system:
// the parameter domain is cut into a regular grid and each cell [m] is
// checked on x0 = [-eps, eps]^n around the origin with eps = rule(width).

#include <cstddef>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "intstab/box.hpp"
#include "intstab/expr.hpp"
#include "intstab/stability.hpp"

namespace intstab {

struct PavingOptions {
  double cell_width = 0.05;
  StabilityOptions stability;
  /// Initial-box radius as a function of the cell width.
  std::function<double(double)> radius_rule = [](double w) { return std::sqrt(w); };
  std::string radius_rule_name = "sqrt(cell width)";
  /// Worker threads; 0 means one per hardware thread.
  unsigned threads = 0;
};

struct ParamCell {
  Box m_box;
  Verdict status = Verdict::undetermined;
  std::size_t q = 0;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  Cause cause = Cause::none;
  std::string detail;
};

struct PavingResult {
  Box domain;
  double cell_width = 0.0;
  double epsilon = 0.0;
  std::string epsilon_rule;
  std::vector<std::size_t> shape;  // cells per parameter axis
  /// Row-major: the last parameter axis varies fastest.
  std::vector<ParamCell> cells;

  std::size_t proven_count() const;
};

/// Throws InvalidDomain for non-positive widths or an empty domain.
PavingResult pave(const VectorFunc& f, const Box& domain, const PavingOptions& options = {});

}  // namespace intstab
