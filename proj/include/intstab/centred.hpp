#pragma once

// Centred forms and their iteration.
//
// A system f with an equilibrium near xbar is moved to the origin:
// g(p, m) = f(p + xbar, m) - f(xbar, m), so g(0, m) = 0 exactly for every
// real xbar in the enclosure. The centred form of g on a box [p] containing 0
// is [J_g]([p]) * [p]; iterating it gives the sequence
//   z_k = [g](z_{k-1}),  A_k = [J_g](z_{k-1}) * A_{k-1},  fc_k = A_k * [p].

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "intstab/box.hpp"
#include "intstab/error.hpp"
#include "intstab/expr.hpp"

namespace intstab {

struct CentredProblem {
  VectorFunc f;
  VectorFunc g;
  Box xbar;      // thin enclosure of the centre
  Box params;    // parameter box the residual was computed over
  Box residual;  // encloses f(xbar, m) - xbar
};

/// Builds g and the residual. `xbar` must be thin (a few ulps at most).
CentredProblem centre(const VectorFunc& f, const Box& xbar, const Box& params = Box());

/// [J_g]([p]) * [p], optionally plus the residual. Requires 0 in [p].
Box centred_eval(const CentredProblem& cp, const Box& p, bool include_residual = false);

struct CentredStep {
  Box z;
  IntervalMatrix A;
  Box fc;
};

struct TraceError {
  ErrorCode code;
  std::string message;
};

/// steps[0] is (p, I, p); steps[k] is the k-th iterate.
struct CentredTrace {
  Box p;
  std::vector<CentredStep> steps;
  std::optional<TraceError> error;  // set when the iteration stopped early
};

/// Incremental form of the recursion, for callers that stop early.
class CentredIteration {
 public:
  CentredIteration(const CentredProblem& cp, const Box& p);

  /// Computes the next step. Evaluation errors propagate as exceptions and
  /// leave the iteration unchanged.
  const CentredStep& advance();
  const CentredStep& current() const { return step_; }
  std::size_t k() const noexcept { return k_; }

 private:
  const CentredProblem* cp_;
  Box p_;
  CentredStep step_;
  std::size_t k_ = 0;
};

CentredTrace iterate_centred(const CentredProblem& cp, const Box& p, std::size_t N);

}  // namespace intstab
