#pragma once

#include <span>
#include <vector>

#include "intstab/box.hpp"
#include "intstab/expr.hpp"

namespace intstab {

struct Evaluation {
  Box value;
  IntervalMatrix jacobian;  // m x n, partial derivatives w.r.t. the state only
};

/// Natural inclusion [f]([x], [m]).
Box eval_natural(const VectorFunc& f, const Box& x, const Box& m = Box());

/// Natural extension of the state Jacobian over [x], with [m] held as an
/// interval constant.
IntervalMatrix jacobian_natural(const VectorFunc& f, const Box& x, const Box& m = Box());

/// Both of the above in one forward sweep.
Evaluation evaluate_with_jacobian(const VectorFunc& f, const Box& x, const Box& m = Box());

/// Plain floating-point evaluation, for simulation and cross-checks. Not
/// rigorous.
std::vector<double> eval_point(const VectorFunc& f, std::span<const double> x,
                               std::span<const double> m = {});

}  // namespace intstab
