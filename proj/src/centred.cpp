#include "intstab/centred.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "intstab/eval.hpp"

namespace intstab {

namespace {

void require_thin(const Box& xbar) {
  for (const Interval& c : xbar) {
    require_nonempty(c);
    // A handful of ulps: the centre is a point, known up to rounding.
    const double tol = 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, abs(c));
    if (!(width(c) <= tol)) throw Error(ErrorCode::invalid_argument, "centre must be a thin box");
  }
}

void require_zero_inside(const Box& p) {
  if (!p.contains_zero()) throw Error(ErrorCode::invalid_argument, "centred box must contain the origin");
}

}  // namespace

CentredProblem centre(const VectorFunc& f, const Box& xbar, const Box& params) {
  require_same_size(xbar.size(), f.state_dim(), "centre");
  require_same_size(params.size(), f.param_dim(), "parameter box");
  require_same_size(f.output_dim(), f.state_dim(), "centring needs a map R^n -> R^n");
  require_thin(xbar);

  const std::size_t n = f.state_dim();
  ExprBuilder b(n, f.param_dim());
  std::vector<Expr> c, shifted, ms;
  for (std::size_t i = 0; i < n; ++i) {
    c.push_back(b.constant(xbar[i]));
    shifted.push_back(b.state(i) + c.back());
  }
  for (std::size_t j = 0; j < f.param_dim(); ++j) ms.push_back(b.param(j));

  const std::vector<Expr> f1 = b.import(f, shifted, ms);
  const std::vector<Expr> f0 = b.import(f, c, ms);
  std::vector<Expr> g, r;
  for (std::size_t i = 0; i < n; ++i) {
    g.push_back(f1[i] - f0[i]);
    r.push_back(f0[i] - c[i]);
  }

  CentredProblem cp;
  cp.f = f;
  cp.g = b.build(g);
  cp.xbar = xbar;
  cp.params = params;
  // Same builder, so the centre constants are shared with g: the residual
  // is f(c) - c for the very real c that g is centred on.
  cp.residual = eval_natural(b.build(r), Box(n), params);
  return cp;
}

Box centred_eval(const CentredProblem& cp, const Box& p, bool include_residual) {
  require_zero_inside(p);
  const Box fc = mat_mul(jacobian_natural(cp.g, p, cp.params), p);
  return include_residual ? fc + cp.residual : fc;
}

CentredIteration::CentredIteration(const CentredProblem& cp, const Box& p)
    : cp_(&cp), p_(p), step_{p, IntervalMatrix::identity(p.size()), p} {
  require_same_size(p.size(), cp.g.state_dim(), "centred box");
  require_zero_inside(p);
}

const CentredStep& CentredIteration::advance() {
  const Evaluation e = evaluate_with_jacobian(cp_->g, step_.z, cp_->params);
  CentredStep next;
  next.A = mat_mul(e.jacobian, step_.A);
  next.z = e.value;
  next.fc = mat_mul(next.A, p_);
  step_ = std::move(next);
  ++k_;
  return step_;
}

CentredTrace iterate_centred(const CentredProblem& cp, const Box& p, std::size_t N) {
  if (N < 1) throw Error(ErrorCode::invalid_argument, "iteration count must be at least 1");
  CentredIteration it(cp, p);
  CentredTrace trace;
  trace.p = p;
  trace.steps.push_back(it.current());
  for (std::size_t k = 1; k <= N; ++k) {
    try {
      trace.steps.push_back(it.advance());
    } catch (const Error& e) {
      trace.error = TraceError{e.code(), e.what()};
      break;
    }
  }
  return trace;
}

}  // namespace intstab
