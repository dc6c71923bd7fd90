#pragma once

// The built-in systems used by the CLI, the tests and the acceptance suite.

#include <string>
#include <vector>

#include "intstab/expr.hpp"

namespace intstab::scenarios {

/// x -> rho * x * (1 - x). `rho` is a decimal literal.
VectorFunc logistic(const std::string& rho = "2.4");

/// x -> gain * R(pi/6 + x1, pi/4 + x2, pi/3 + x3) * x, with
/// R(phi, theta, psi) = Rz(psi) * Ry(theta) * Rx(phi).
VectorFunc rot3d(const std::string& gain = "0.8");

struct Landmarks {
  std::string a1 = "0", a2 = "0.1";
  std::string b1 = "0", b2 = "-0.1";
};

enum class NewtonForm {
  /// Same real map, rearranged so its natural extension stays tight:
  /// h(m) - h(x + m) = -Jh(x + m) x + |x|^2 (1, 1), hence
  /// f(x, m) = |x|^2 Jh(x + m)^-1 (1, 1), with det Jh expanded to its
  /// (linear) polynomial form.
  expanded,
  /// x + Jh(x + m)^-1 (h(m) - h(x + m)) exactly as written.
  literal,
};

/// Newton step on the localisation error x = p - m, parameters m1, m2,
/// h_i(p) = |p - landmark_i|^2. The 2x2 inverse is written out with the
/// adjugate and the determinant.
VectorFunc newton_localisation(const Landmarks& l = {}, NewtonForm form = NewtonForm::expanded);

/// The four stage maps of the lake cycle at cruising speed v:
/// east for 25 s, north to the shore, south for 7.5 s, west to the shore.
std::vector<VectorFunc> cycle_stages(const std::string& v = "1");

/// f4 o f3 o f2 o f1.
VectorFunc cycle(const std::string& v = "1");

/// Shore curve x2 = h(x1) = 20 (1 - exp(-x1 / 4)) and its inverse.
double shore(double x1);
double shore_inverse(double x2);

}  // namespace intstab::scenarios
