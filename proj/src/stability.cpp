#include "intstab/stability.hpp"

#include <cmath>
#include <cstdio>

#include "intstab/eval.hpp"
#include "intstab/rounding.hpp"

namespace intstab {

const char* to_string(Verdict v) { return v == Verdict::proven_stable ? "ProvenStable" : "Undetermined"; }

const char* to_string(Mode m) { return m == Mode::equilibrium ? "Equilibrium" : "Invariance"; }

const char* to_string(Cause c) {
  switch (c) {
    case Cause::none: return "None";
    case Cause::iteration_limit: return "IterationLimit";
    case Cause::singular_jacobian: return "SingularJacobian";
    case Cause::domain_error: return "DomainError";
    case Cause::not_applicable: return "NotApplicable";
    case Cause::evaluation_error: return "EvaluationError";
  }
  return "?";
}

namespace {

Cause cause_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::division_by_zero_interval: return Cause::singular_jacobian;
    case ErrorCode::domain_error: return Cause::domain_error;
    default: return Cause::evaluation_error;
  }
}

double rate_bound(double y, double x) {
  // Ratio of same-side bounds; 0/0 and opposite signs contribute nothing.
  if (x == 0.0) return 0.0;
  const double r = rounding::div_up(y, x);
  return r > 0.0 ? r : 0.0;
}

}  // namespace

double extract_rate(const Box& y, const Box& x) {
  require_same_size(y.size(), x.size(), "extract_rate");
  if (!x.contains_zero()) throw Error(ErrorCode::invalid_argument, "extract_rate needs 0 in x");
  if (!subset(y, x)) throw Error(ErrorCode::not_contained, "image is not contained in the box");
  double alpha = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    alpha = std::max({alpha, rate_bound(y[j].lo(), x[j].lo()), rate_bound(y[j].hi(), x[j].hi())});
  }
  return alpha;
}

ExponentialCertificate exponential_certificate(const StabilityReport& report) {
  if (!report.proven() || report.mode != Mode::equilibrium || !(report.alpha < 1.0)) {
    throw Error(ErrorCode::not_proven, "no exponential certificate without a proven equilibrium");
  }
  ExponentialCertificate c;
  c.delta_box = report.delta_box;
  c.q = report.q;
  c.alpha = report.alpha;
  c.beta = report.alpha == 0.0 ? rounding::kInf : -ln(Interval(report.alpha)).hi();
  if (c.beta < 0.0) c.beta = 0.0;
  c.radius = norm(report.delta_box);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "for every x with x - xbar in the delta box and every k >= 0: "
                "|f^(%zu k)(x) - xbar| <= %.17g * exp(-%.17g k)",
                c.q, c.radius, c.beta);
  c.description = buf;
  return c;
}

StabilityReport check_centred(const CentredProblem& cp, const Box& p, const StabilityOptions& options) {
  if (options.max_iterations < 1) throw Error(ErrorCode::invalid_argument, "iteration count must be at least 1");
  StabilityReport r;
  r.mode = Mode::equilibrium;
  r.xbar = cp.xbar;
  r.delta_box = p;
  r.residual = cp.residual;
  r.initial_box = p + cp.xbar;
  r.trace.p = p;

  CentredIteration it(cp, p);
  r.trace.steps.push_back(it.current());
  for (std::size_t i = 1; i <= options.max_iterations; ++i) {
    try {
      it.advance();
    } catch (const Error& e) {
      r.trace.error = TraceError{e.code(), e.what()};
      r.cause = cause_of(e.code());
      r.detail = e.what();
      return r;
    }
    const CentredStep& s = it.current();
    r.trace.steps.push_back(s);
    if (!interior_subset(s.fc, p)) continue;
    const double alpha = extract_rate(s.fc, p);
    if (!(alpha < 1.0)) continue;
    r.verdict = Verdict::proven_stable;
    r.q = i;
    r.alpha = alpha;
    r.beta = exponential_certificate(r).beta;
    return r;
  }
  r.cause = Cause::iteration_limit;
  r.detail = "no inclusion within " + std::to_string(options.max_iterations) + " iterations";
  return r;
}

StabilityReport check_stability(const VectorFunc& f, const Box& xbar, const Box& x0, const StabilityOptions& options,
                                const Box& params) {
  require_same_size(x0.size(), f.state_dim(), "initial box");
  require_same_size(xbar.size(), f.state_dim(), "centre");
  if (x0.has_empty_component()) throw Error(ErrorCode::empty_operand, "empty initial box");
  if (!subset(xbar, x0)) throw Error(ErrorCode::centre_outside_box, "the centre is not inside the initial box");

  const CentredProblem cp = centre(f, xbar, params);
  const double limit = options.residual_tolerance * norm(x0);
  if (!(norm(cp.residual) <= limit)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "|f(xbar) - xbar| <= %.3g exceeds %.3g", norm(cp.residual), limit);
    throw Error(ErrorCode::centre_residual_too_large, buf);
  }
  StabilityReport r = check_centred(cp, x0 - xbar, options);
  r.initial_box = x0;
  return r;
}

// ---------------------------------------------------------------------------
// Invariance

namespace {

std::vector<double> locate_cycle_point(const std::vector<VectorFunc>& stages, const Box& x0) {
  std::vector<double> x = x0.midpoint();
  for (int it = 0; it < 10000; ++it) {
    std::vector<double> y = x;
    for (const VectorFunc& s : stages) y = eval_point(s, y);
    double step = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (!std::isfinite(y[i])) return x0.midpoint();
      step = std::max(step, std::abs(y[i] - x[i]));
      scale = std::max(scale, std::abs(y[i]));
    }
    x = y;
    if (step <= 1e-12 * scale) break;
  }
  return x0.contains(x) ? x : x0.midpoint();
}

IntervalMatrix minus_identity(IntervalMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) = m(i, i) - Interval(1.0);
  return m;
}

Box drift_box(const Interval& magnitude, const Disturbance& u, std::size_t n) {
  const Interval r = magnitude / u.speed * Interval(-u.drift.hi(), u.drift.hi());
  return Box(n, r);
}

}  // namespace

StabilityReport check_invariance(const std::vector<VectorFunc>& stages, const Box& x0, const Disturbance& u,
                                 const StabilityOptions& options) {
  if (stages.empty()) throw Error(ErrorCode::invalid_argument, "no stages");
  if (options.max_iterations < 1) throw Error(ErrorCode::invalid_argument, "iteration count must be at least 1");
  const std::size_t n = x0.size();
  for (const VectorFunc& s : stages) {
    require_same_size(s.state_dim(), n, "stage input");
    require_same_size(s.output_dim(), n, "stage output");
    if (s.param_dim() != 0) throw Error(ErrorCode::arity_error, "stages must not take parameters");
  }
  if (!u.per_stage.empty()) {
    require_same_size(u.per_stage.size(), stages.size(), "disturbance list");
    for (const Box& b : u.per_stage) {
      require_same_size(b.size(), n, "disturbance box");
      if (!b.contains_zero()) throw Error(ErrorCode::invalid_argument, "disturbance boxes must contain 0");
    }
  } else if (u.drift.lo() < 0.0 || !(u.speed.lo() > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "drift must be >= 0 and speed > 0");
  }
  if (x0.has_empty_component()) throw Error(ErrorCode::empty_operand, "empty initial box");

  StabilityReport r;
  r.mode = Mode::invariance;
  r.initial_box = x0;
  r.xbar = Box::point(locate_cycle_point(stages, x0));
  const Box p = x0 - r.xbar;
  r.delta_box = p;
  r.trace.p = p;
  r.trace.steps.push_back(CentredStep{p, IntervalMatrix::identity(n), p});

  // Invariant: every state reachable at this point lies in w and in
  // c + A p + D, where c encloses the propagated centre.
  Box c = r.xbar;
  Box w = x0;
  IntervalMatrix A = IntervalMatrix::identity(n);
  Box D(n);

  for (std::size_t k = 1; k <= options.max_iterations; ++k) {
    try {
      for (std::size_t s = 0; s < stages.size(); ++s) {
        const VectorFunc& f = stages[s];
        const Box region = hull(w, c);
        const IntervalMatrix J = jacobian_natural(f, region);
        const Box offset = mat_mul(A, p) + D;  // x - c
        const Box fc = eval_natural(f, c);
        const Box fw = eval_natural(f, w);

        Box us;
        if (!u.per_stage.empty()) {
          us = u.per_stage[s];
        } else {
          // Displacement f_s(x) - x, enclosed two ways.
          const Box d_natural = fw - w;
          const Box d_centred = (fc - c) + mat_mul(minus_identity(J), offset);
          const Box d = intersect(d_natural, d_centred);
          us = drift_box(Interval(norm(d.has_empty_component() ? d_natural : d)), u, n);
        }

        c = fc;
        A = mat_mul(J, A);
        D = mat_mul(J, D) + us;
        const Box linear = c + mat_mul(A, p) + D;
        const Box next = intersect(fw + us, linear);
        w = next.has_empty_component() ? linear : next;
        if (k == 1) r.stage_images.push_back(w);
      }
    } catch (const Error& e) {
      r.trace.error = TraceError{e.code(), e.what()};
      r.cause = cause_of(e.code());
      r.detail = e.what();
      return r;
    }
    r.trace.steps.push_back(CentredStep{w - r.xbar, A, mat_mul(A, p) + (c - r.xbar) + D});
    if (subset(w, x0)) {
      r.verdict = Verdict::proven_stable;
      r.q = k;
      r.residual = c - r.xbar;
      const Box linear_part = mat_mul(A, p);
      if (interior_subset(linear_part, p)) {
        r.alpha = extract_rate(linear_part, p);
        if (r.alpha < 1.0) r.beta = r.alpha == 0.0 ? rounding::kInf : -ln(Interval(r.alpha)).hi();
      }
      return r;
    }
  }
  r.cause = Cause::iteration_limit;
  r.detail = "image not inside the initial box within " + std::to_string(options.max_iterations) + " cycles";
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void bisect(const VectorFunc& f, const Box& xbar, const Box& box, const StabilityOptions& options,
            std::size_t depth, const Box& params, std::vector<BisectionLeaf>& out) {
  if (!subset(xbar, box)) {
    StabilityReport r;
    r.initial_box = box;
    r.xbar = xbar;
    r.cause = Cause::not_applicable;
    r.detail = "box does not contain the centre";
    out.push_back({box, std::move(r)});
    return;
  }
  StabilityReport r = check_stability(f, xbar, box, options, params);
  if (r.proven() || depth == 0) {
    out.push_back({box, std::move(r)});
    return;
  }
  std::size_t axis = 0;
  for (std::size_t i = 1; i < box.size(); ++i) {
    if (width(box[i]) > width(box[axis])) axis = i;
  }
  const double m = box[axis].mid();
  Box lower = box, upper = box;
  lower[axis] = Interval(box[axis].lo(), m);
  upper[axis] = Interval(m, box[axis].hi());
  bisect(f, xbar, lower, options, depth - 1, params, out);
  bisect(f, xbar, upper, options, depth - 1, params, out);
}

}  // namespace

std::vector<BisectionLeaf> bisect_and_prove(const VectorFunc& f, const Box& xbar, const Box& x0,
                                            const StabilityOptions& options, std::size_t max_depth,
                                            const Box& params) {
  std::vector<BisectionLeaf> leaves;
  bisect(f, xbar, x0, options, max_depth, params, leaves);
  return leaves;
}

}  // namespace intstab
