#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "intstab/box.hpp"
#include "intstab/centred.hpp"
#include "intstab/expr.hpp"

namespace intstab {

enum class Verdict { proven_stable, undetermined };
enum class Mode { equilibrium, invariance };
enum class Cause {
  none,
  iteration_limit,    // no inclusion within N steps
  singular_jacobian,  // a division by an interval containing 0
  domain_error,       // sqrt/ln outside their domain
  not_applicable,     // the box does not contain the centre
  evaluation_error,   // any other evaluation failure
};

const char* to_string(Verdict v);
const char* to_string(Mode m);
const char* to_string(Cause c);

struct StabilityOptions {
  std::size_t max_iterations = 10;
  /// Equilibrium mode: |f(xbar) - xbar| must not exceed this times |x0|.
  double residual_tolerance = 1e-9;
};

struct StabilityReport {
  Verdict verdict = Verdict::undetermined;
  Mode mode = Mode::equilibrium;
  std::size_t q = 0;
  double alpha = std::numeric_limits<double>::quiet_NaN();  // NaN when not available
  double beta = std::numeric_limits<double>::quiet_NaN();
  Box initial_box;  // x0, absolute coordinates
  Box xbar;
  Box delta_box;  // x0 - xbar, the certified neighbourhood in centred coordinates
  Box residual;
  CentredTrace trace;  // centred coordinates
  /// Invariance mode: image of x0 after each stage, absolute coordinates.
  std::vector<Box> stage_images;
  Cause cause = Cause::none;
  std::string detail;

  bool proven() const noexcept { return verdict == Verdict::proven_stable; }
};

/// Smallest alpha (rounded up) with y inside alpha * x. Requires y inside x
/// (else NotContained) and 0 in x.
double extract_rate(const Box& y, const Box& x);

struct ExponentialCertificate {
  Box delta_box;
  std::size_t q = 0;
  double alpha = 0.0;
  double beta = 0.0;    // lower bound of -ln(alpha)
  double radius = 0.0;  // norm of delta_box
  std::string description;
};

/// Throws NotProven unless the report is a proven equilibrium.
ExponentialCertificate exponential_certificate(const StabilityReport& report);

/// Centred-form stability check of x_{k+1} = f(x_k, m) around xbar on x0
/// (absolute coordinates), with the parameters held in `params`.
StabilityReport check_stability(const VectorFunc& f, const Box& xbar, const Box& x0,
                                const StabilityOptions& options = {}, const Box& params = Box());

/// Same, on an already centred problem and centred box p.
StabilityReport check_centred(const CentredProblem& cp, const Box& p, const StabilityOptions& options = {});

/// Additive stage disturbances. Either explicit boxes (one per stage), or the
/// drift rule u_s = (|f_s(x) - x| / speed) * [-drift, drift]^n.
struct Disturbance {
  std::vector<Box> per_stage;
  Interval drift = Interval(0.0);
  Interval speed = Interval(1.0);
};

/// Forward invariance of x0 under the disturbed cycle stages[last] o ... o
/// stages[0]. Stages are propagated one at a time with a mean-value form
/// around the cycle's numerically located fixed point.
StabilityReport check_invariance(const std::vector<VectorFunc>& stages, const Box& x0, const Disturbance& u,
                                 const StabilityOptions& options = {});

struct BisectionLeaf {
  Box box;
  StabilityReport report;
};

/// Splits x0 along its widest component while undetermined. Leaves come in
/// depth-first order, lower half first.
std::vector<BisectionLeaf> bisect_and_prove(const VectorFunc& f, const Box& xbar, const Box& x0,
                                            const StabilityOptions& options, std::size_t max_depth,
                                            const Box& params = Box());

}  // namespace intstab
