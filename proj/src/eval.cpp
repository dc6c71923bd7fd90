#include "intstab/eval.hpp"

#include <cmath>

#include "intstab/dual.hpp"

namespace intstab {

namespace {

void check_dims(const VectorFunc& f, std::size_t n, std::size_t p) {
  require_same_size(n, f.state_dim(), "state box");
  require_same_size(p, f.param_dim(), "parameter box");
}

template <typename T>
T apply(Op op, const T& a, const T& b, int k) {
  switch (op) {
    case Op::add: return a + b;
    case Op::sub: return a - b;
    case Op::mul: return a * b;
    case Op::div: return a / b;
    case Op::neg: return -a;
    case Op::sqr: return sqr(a);
    case Op::sqrt: return sqrt(a);
    case Op::exp: return exp(a);
    case Op::ln: return ln(a);
    case Op::sin: return sin(a);
    case Op::cos: return cos(a);
    case Op::pow: return pow(a, k);
    default: break;
  }
  throw Error(ErrorCode::invalid_argument, "unexpected node");
}

std::vector<Interval> sweep_values(const VectorFunc& f, const Box& x, const Box& m) {
  const auto nodes = f.nodes();
  std::vector<Interval> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    switch (n.op) {
      case Op::constant: v[i] = n.value; break;
      case Op::state: v[i] = x[static_cast<std::size_t>(n.k)]; break;
      case Op::param: v[i] = m[static_cast<std::size_t>(n.k)]; break;
      default: v[i] = apply(n.op, v[n.a], is_binary(n.op) ? v[n.b] : v[n.a], n.k); break;
    }
  }
  return v;
}

}  // namespace

Box eval_natural(const VectorFunc& f, const Box& x, const Box& m) {
  check_dims(f, x.size(), m.size());
  if (x.has_empty_component() || m.has_empty_component()) {
    throw Error(ErrorCode::empty_operand, "evaluation on an empty box");
  }
  const std::vector<Interval> v = sweep_values(f, x, m);
  Box out(f.output_dim());
  for (std::size_t i = 0; i < f.output_dim(); ++i) out[i] = v[f.outputs()[i]];
  return out;
}

Evaluation evaluate_with_jacobian(const VectorFunc& f, const Box& x, const Box& m) {
  check_dims(f, x.size(), m.size());
  if (x.has_empty_component() || m.has_empty_component()) {
    throw Error(ErrorCode::empty_operand, "evaluation on an empty box");
  }
  const std::size_t n = f.state_dim();
  const auto nodes = f.nodes();
  const auto dep = f.state_dependent();
  std::vector<DualInterval> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = nodes[i];
    switch (node.op) {
      case Op::constant: v[i] = DualInterval(node.value); break;
      case Op::state:
        v[i] = DualInterval::variable(x[static_cast<std::size_t>(node.k)], static_cast<std::size_t>(node.k), n);
        break;
      case Op::param: v[i] = DualInterval(m[static_cast<std::size_t>(node.k)]); break;
      default:
        if (!dep[i]) {
          // No state inside: plain interval evaluation is enough.
          const Interval& a = v[node.a].value;
          v[i] = DualInterval(apply(node.op, a, is_binary(node.op) ? v[node.b].value : a, node.k));
        } else {
          v[i] = apply(node.op, v[node.a], is_binary(node.op) ? v[node.b] : v[node.a], node.k);
        }
        break;
    }
  }
  Evaluation out{Box(f.output_dim()), IntervalMatrix(f.output_dim(), n)};
  for (std::size_t r = 0; r < f.output_dim(); ++r) {
    const DualInterval& d = v[f.outputs()[r]];
    out.value[r] = d.value;
    if (!d.is_constant()) {
      for (std::size_t c = 0; c < n; ++c) out.jacobian(r, c) = d.partials[c];
    }
  }
  return out;
}

IntervalMatrix jacobian_natural(const VectorFunc& f, const Box& x, const Box& m) {
  return evaluate_with_jacobian(f, x, m).jacobian;
}

std::vector<double> eval_point(const VectorFunc& f, std::span<const double> x, std::span<const double> m) {
  check_dims(f, x.size(), m.size());
  const auto nodes = f.nodes();
  std::vector<double> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    const double a = is_unary(n.op) || is_binary(n.op) ? v[n.a] : 0.0;
    const double b = is_binary(n.op) ? v[n.b] : 0.0;
    switch (n.op) {
      case Op::constant: v[i] = n.value.mid(); break;
      case Op::state: v[i] = x[static_cast<std::size_t>(n.k)]; break;
      case Op::param: v[i] = m[static_cast<std::size_t>(n.k)]; break;
      case Op::add: v[i] = a + b; break;
      case Op::sub: v[i] = a - b; break;
      case Op::mul: v[i] = a * b; break;
      case Op::div: v[i] = a / b; break;
      case Op::neg: v[i] = -a; break;
      case Op::sqr: v[i] = a * a; break;
      case Op::sqrt: v[i] = std::sqrt(a); break;
      case Op::exp: v[i] = std::exp(a); break;
      case Op::ln: v[i] = std::log(a); break;
      case Op::sin: v[i] = std::sin(a); break;
      case Op::cos: v[i] = std::cos(a); break;
      case Op::pow: v[i] = std::pow(a, n.k); break;
    }
  }
  std::vector<double> out;
  out.reserve(f.output_dim());
  for (NodeId o : f.outputs()) out.push_back(v[o]);
  return out;
}

}  // namespace intstab
