#include "intstab/scenarios.hpp"

#include <cmath>

namespace intstab::scenarios {

VectorFunc logistic(const std::string& rho) {
  ExprBuilder b(1, 0);
  const Expr x = b.state(0);
  return b.build(std::vector<Expr>{b.decimal(rho) * x * (1 - x)});
}

VectorFunc rot3d(const std::string& gain) {
  ExprBuilder b(3, 0);
  const Expr x1 = b.state(0), x2 = b.state(1), x3 = b.state(2);
  const Expr pi = b.pi();
  const Expr phi = pi / 6 + x1;
  const Expr theta = pi / 4 + x2;
  const Expr psi = pi / 3 + x3;
  const Expr cf = cos(phi), sf = sin(phi);
  const Expr ct = cos(theta), st = sin(theta);
  const Expr cp = cos(psi), sp = sin(psi);

  const Expr r[3][3] = {
      {cp * ct, cp * st * sf - sp * cf, cp * st * cf + sp * sf},
      {sp * ct, sp * st * sf + cp * cf, sp * st * cf - cp * sf},
      {-st, ct * sf, ct * cf},
  };
  const Expr k = b.decimal(gain);
  std::vector<Expr> out;
  for (const auto& row : r) out.push_back(k * (row[0] * x1 + row[1] * x2 + row[2] * x3));
  return b.build(out);
}

namespace {

// Decimal literal with an optional sign; "-0.1" is the negation of "0.1".
Expr signed_decimal(ExprBuilder& b, const std::string& text) {
  if (!text.empty() && text[0] == '-') return -b.decimal(text.substr(1));
  return b.decimal(text);
}

}  // namespace

VectorFunc newton_localisation(const Landmarks& l, NewtonForm form) {
  ExprBuilder b(2, 2);
  const Expr x1 = b.state(0), x2 = b.state(1);
  const Expr m1 = b.param(0), m2 = b.param(1);
  const Expr a1 = signed_decimal(b, l.a1), a2 = signed_decimal(b, l.a2);
  const Expr b1 = signed_decimal(b, l.b1), b2 = signed_decimal(b, l.b2);
  const Expr p1 = x1 + m1, p2 = x2 + m2;

  // Jh(p) = 2 [[p1 - a1, p2 - a2], [p1 - b1, p2 - b2]], adj = [[j22, -j12], [-j21, j11]]
  const Expr j11 = 2 * (p1 - a1), j12 = 2 * (p2 - a2);
  const Expr j21 = 2 * (p1 - b1), j22 = 2 * (p2 - b2);

  if (form == NewtonForm::expanded) {
    const Expr det = 4 * ((a2 - b2) * p1 + (b1 - a1) * p2 + (a1 * b2 - a2 * b1));
    // adj (1, 1) = (j22 - j12, j11 - j21) = 2 (a2 - b2, b1 - a1)
    const Expr r = sqr(x1) + sqr(x2);
    return b.build(std::vector<Expr>{r * (2 * (a2 - b2)) / det, r * (2 * (b1 - a1)) / det});
  }

  const Expr det = j11 * j22 - j12 * j21;
  auto h = [&](Expr q1, Expr q2) {
    return std::pair{sqr(q1 - a1) + sqr(q2 - a2), sqr(q1 - b1) + sqr(q2 - b2)};
  };
  const auto [hm1, hm2] = h(m1, m2);
  const auto [hp1, hp2] = h(p1, p2);
  const Expr r1 = hm1 - hp1, r2 = hm2 - hp2;
  const Expr out1 = x1 + (j22 * r1 - j12 * r2) / det;
  const Expr out2 = x2 + (j11 * r2 - j21 * r1) / det;
  return b.build(std::vector<Expr>{out1, out2});
}

namespace {

Expr shore_expr(Expr x1) { return 20 * (1 - exp(-x1 / 4)); }

Expr shore_inverse_expr(Expr x2) { return -4 * ln(1 - x2 / 20); }

}  // namespace

std::vector<VectorFunc> cycle_stages(const std::string& v) {
  std::vector<VectorFunc> stages;
  {
    ExprBuilder b(2, 0);
    const Expr speed = b.decimal(v);
    stages.push_back(b.build(std::vector<Expr>{b.state(0) + 25 * speed, b.state(1)}));
  }
  {
    ExprBuilder b(2, 0);
    stages.push_back(b.build(std::vector<Expr>{b.state(0), shore_expr(b.state(0))}));
  }
  {
    ExprBuilder b(2, 0);
    const Expr speed = b.decimal(v);
    stages.push_back(b.build(std::vector<Expr>{b.state(0), b.state(1) - b.decimal("7.5") * speed}));
  }
  {
    ExprBuilder b(2, 0);
    stages.push_back(b.build(std::vector<Expr>{shore_inverse_expr(b.state(1)), b.state(1)}));
  }
  return stages;
}

VectorFunc cycle(const std::string& v) {
  const std::vector<VectorFunc> s = cycle_stages(v);
  return compose(s[3], compose(s[2], compose(s[1], s[0])));
}

double shore(double x1) { return 20.0 * (1.0 - std::exp(-0.25 * x1)); }

double shore_inverse(double x2) { return -4.0 * std::log(1.0 - x2 / 20.0); }

}  // namespace intstab::scenarios
