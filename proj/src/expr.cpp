#include "intstab/expr.hpp"

#include <cstdio>
#include <functional>
#include <sstream>

namespace intstab {

const char* op_name(Op op) {
  switch (op) {
    case Op::constant: return "const";
    case Op::state: return "x";
    case Op::param: return "m";
    case Op::add: return "+";
    case Op::sub: return "-";
    case Op::mul: return "*";
    case Op::div: return "/";
    case Op::neg: return "-";
    case Op::sqr: return "sqr";
    case Op::sqrt: return "sqrt";
    case Op::exp: return "exp";
    case Op::ln: return "ln";
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::pow: return "^";
  }
  return "?";
}

bool is_binary(Op op) { return op == Op::add || op == Op::sub || op == Op::mul || op == Op::div; }

bool is_unary(Op op) {
  switch (op) {
    case Op::neg:
    case Op::sqr:
    case Op::sqrt:
    case Op::exp:
    case Op::ln:
    case Op::sin:
    case Op::cos:
    case Op::pow:
      return true;
    default:
      return false;
  }
}

namespace {

Interval apply_unary(Op op, const Interval& x, int k) {
  switch (op) {
    case Op::neg: return -x;
    case Op::sqr: return sqr(x);
    case Op::sqrt: return sqrt(x);
    case Op::exp: return exp(x);
    case Op::ln: return ln(x);
    case Op::sin: return sin(x);
    case Op::cos: return cos(x);
    case Op::pow: return pow(x, k);
    default: break;
  }
  throw Error(ErrorCode::invalid_argument, "not a unary op");
}

Interval apply_binary(Op op, const Interval& a, const Interval& b) {
  switch (op) {
    case Op::add: return a + b;
    case Op::sub: return a - b;
    case Op::mul: return a * b;
    case Op::div: return a / b;
    default: break;
  }
  throw Error(ErrorCode::invalid_argument, "not a binary op");
}

}  // namespace

ExprBuilder::ExprBuilder(std::size_t state_dim, std::size_t param_dim) : n_(state_dim), p_(param_dim) {}

void ExprBuilder::check_owner(Expr e) const {
  if (e.builder != this || e.id >= nodes_.size()) {
    throw Error(ErrorCode::invalid_argument, "expression handle belongs to another builder");
  }
}

NodeId ExprBuilder::intern(Node node, std::uint64_t serial) {
  Key key{node.op, node.a, node.b, node.k, node.value.lo(), node.value.hi(), node.name, serial};
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(node));
  index_.emplace(std::move(key), id);
  return id;
}

Expr ExprBuilder::state(std::size_t i) {
  if (i >= n_) throw Error(ErrorCode::arity_error, "state index " + std::to_string(i + 1) + " exceeds dimension");
  Node node;
  node.op = Op::state;
  node.k = static_cast<std::int32_t>(i);
  return wrap(intern(std::move(node)));
}

Expr ExprBuilder::param(std::size_t j) {
  if (j >= p_) throw Error(ErrorCode::arity_error, "parameter index " + std::to_string(j + 1) + " exceeds dimension");
  Node node;
  node.op = Op::param;
  node.k = static_cast<std::int32_t>(j);
  return wrap(intern(std::move(node)));
}

Expr ExprBuilder::exact(double v) {
  Node node;
  node.value = Interval(v);
  return wrap(intern(std::move(node)));
}

Expr ExprBuilder::decimal(const std::string& text) {
  const Interval v = decimal_enclosure(text);
  if (v.is_degenerate()) return exact(v.lo());
  Node node;
  node.value = v;
  node.name = text;
  return wrap(intern(std::move(node)));
}

Expr ExprBuilder::pi() {
  Node node;
  node.value = pi_enclosure();
  node.name = "pi";
  return wrap(intern(std::move(node)));
}

Expr ExprBuilder::constant(const Interval& enclosure) {
  require_nonempty(enclosure);
  if (enclosure.is_degenerate()) return exact(enclosure.lo());
  Node node;
  node.value = enclosure;
  return wrap(intern(std::move(node), next_serial_++));
}

bool ExprBuilder::is_exact(NodeId id, double v) const {
  const Node& n = nodes_[id];
  return n.op == Op::constant && n.value.is_degenerate() && n.value.lo() == v;
}

bool ExprBuilder::try_simplify(Op op, NodeId a, NodeId b, std::int32_t k, NodeId& out) {
  auto zero = [&] { return exact(0.0).id; };
  switch (op) {
    case Op::add:
      if (is_exact(a, 0.0)) return out = b, true;
      if (is_exact(b, 0.0)) return out = a, true;
      break;
    case Op::sub:
      if (is_exact(b, 0.0)) return out = a, true;
      // Same node means the same real, including enclosure-only constants.
      if (a == b) return out = zero(), true;
      if (is_exact(a, 0.0)) return out = make(Op::neg, b, 0, 0), true;
      break;
    case Op::mul:
      if (is_exact(a, 0.0) || is_exact(b, 0.0)) return out = zero(), true;
      if (is_exact(a, 1.0)) return out = b, true;
      if (is_exact(b, 1.0)) return out = a, true;
      break;
    case Op::div:
      if (is_exact(a, 0.0) && !is_exact(b, 0.0)) return out = zero(), true;
      if (is_exact(b, 1.0)) return out = a, true;
      break;
    case Op::neg:
      if (nodes_[a].op == Op::neg) return out = nodes_[a].a, true;
      break;
    case Op::pow:
      if (k == 1) return out = a, true;
      if (k == 0) return out = exact(1.0).id, true;
      break;
    default:
      break;
  }

  // Constant folding in interval arithmetic. Operations that fail on their
  // constant operands stay symbolic and fail again at evaluation time.
  const bool foldable = is_binary(op) ? is_const(a) && is_const(b) : is_const(a);
  if (foldable) {
    try {
      const Interval v = is_binary(op) ? apply_binary(op, nodes_[a].value, nodes_[b].value)
                                       : apply_unary(op, nodes_[a].value, k);
      out = constant(v).id;
      return true;
    } catch (const Error&) {
      return false;
    }
  }
  return false;
}

NodeId ExprBuilder::make(Op op, NodeId a, NodeId b, std::int32_t k) {
  if ((op == Op::add || op == Op::mul) && a > b) std::swap(a, b);
  const Key key{op, a, b, k, 0.0, 0.0, std::string(), 0};
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  NodeId result = 0;
  if (!try_simplify(op, a, b, k, result)) {
    Node node;
    node.op = op;
    node.a = a;
    node.b = is_binary(op) ? b : 0;
    node.k = k;
    result = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(std::move(node));
  }
  index_.emplace(key, result);
  return result;
}

Expr ExprBuilder::unary(Op op, Expr a) {
  check_owner(a);
  if (!is_unary(op) || op == Op::pow) throw Error(ErrorCode::invalid_argument, "unary() needs a unary op");
  return wrap(make(op, a.id, 0, 0));
}

Expr ExprBuilder::binary(Op op, Expr a, Expr b) {
  check_owner(a);
  check_owner(b);
  if (!is_binary(op)) throw Error(ErrorCode::invalid_argument, "binary() needs a binary op");
  return wrap(make(op, a.id, b.id, 0));
}

Expr ExprBuilder::pow(Expr a, int n) {
  check_owner(a);
  return wrap(make(Op::pow, a.id, 0, n));
}

std::vector<Expr> ExprBuilder::import(const VectorFunc& f, std::span<const Expr> states,
                                      std::span<const Expr> params) {
  if (states.size() != f.state_dim() || params.size() != f.param_dim()) {
    throw Error(ErrorCode::arity_error, "import: variable substitution does not match function arity");
  }
  const auto src = f.nodes();
  pinned_.push_back(f);
  std::vector<NodeId> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Node& s = src[i];
    switch (s.op) {
      case Op::constant:
        if (s.value.is_degenerate()) {
          map[i] = exact(s.value.lo()).id;
        } else if (!s.name.empty()) {
          Node node = s;
          map[i] = intern(std::move(node));
        } else {
          // Importing the same function twice must reuse its unknowns.
          const auto key = std::make_pair(static_cast<const void*>(src.data()), static_cast<NodeId>(i));
          auto it = imported_.find(key);
          if (it == imported_.end()) it = imported_.emplace(key, constant(s.value).id).first;
          map[i] = it->second;
        }
        break;
      case Op::state:
        check_owner(states[static_cast<std::size_t>(s.k)]);
        map[i] = states[static_cast<std::size_t>(s.k)].id;
        break;
      case Op::param:
        check_owner(params[static_cast<std::size_t>(s.k)]);
        map[i] = params[static_cast<std::size_t>(s.k)].id;
        break;
      default:
        map[i] = make(s.op, map[s.a], is_binary(s.op) ? map[s.b] : 0, s.k);
        break;
    }
  }
  std::vector<Expr> out;
  out.reserve(f.output_dim());
  for (NodeId o : f.outputs()) out.push_back(wrap(map[o]));
  return out;
}

std::vector<Expr> ExprBuilder::import(const VectorFunc& f) {
  std::vector<Expr> xs, ms;
  for (std::size_t i = 0; i < f.state_dim(); ++i) xs.push_back(state(i));
  for (std::size_t j = 0; j < f.param_dim(); ++j) ms.push_back(param(j));
  return import(f, xs, ms);
}

VectorFunc ExprBuilder::build(std::span<const Expr> outputs) const {
  std::vector<char> reachable(nodes_.size(), 0);
  for (Expr e : outputs) {
    check_owner(e);
    reachable[e.id] = 1;
  }
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    if (!reachable[i]) continue;
    const Node& n = nodes_[i];
    if (is_unary(n.op) || is_binary(n.op)) reachable[n.a] = 1;
    if (is_binary(n.op)) reachable[n.b] = 1;
  }
  std::vector<NodeId> remap(nodes_.size(), 0);
  auto nodes = std::make_shared<std::vector<Node>>();
  auto dep = std::make_shared<std::vector<char>>();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!reachable[i]) continue;
    Node n = nodes_[i];
    char d = n.op == Op::state;
    if (is_unary(n.op) || is_binary(n.op)) {
      n.a = remap[n.a];
      d = (*dep)[n.a];
    }
    if (is_binary(n.op)) {
      n.b = remap[n.b];
      d = static_cast<char>(d || (*dep)[n.b]);
    }
    remap[i] = static_cast<NodeId>(nodes->size());
    nodes->push_back(std::move(n));
    dep->push_back(d);
  }
  VectorFunc f;
  f.nodes_ = std::move(nodes);
  f.state_dep_ = std::move(dep);
  f.n_ = n_;
  f.p_ = p_;
  for (Expr e : outputs) f.outputs_.push_back(remap[e.id]);
  return f;
}

std::string VectorFunc::to_string() const {
  const auto ns = nodes();
  std::function<std::string(NodeId)> render = [&](NodeId id) -> std::string {
    const Node& n = ns[id];
    switch (n.op) {
      case Op::constant: {
        if (!n.name.empty()) return n.name;
        char buf[96];
        if (n.value.is_degenerate()) {
          std::snprintf(buf, sizeof buf, "%.17g", n.value.lo());
        } else {
          std::snprintf(buf, sizeof buf, "[%.17g,%.17g]", n.value.lo(), n.value.hi());
        }
        return buf;
      }
      case Op::state: return "x" + std::to_string(n.k + 1);
      case Op::param: return "m" + std::to_string(n.k + 1);
      case Op::neg: return "(-" + render(n.a) + ")";
      case Op::pow: return "(" + render(n.a) + ")^" + std::to_string(n.k);
      default: break;
    }
    if (is_binary(n.op)) return "(" + render(n.a) + op_name(n.op) + render(n.b) + ")";
    return std::string(op_name(n.op)) + "(" + render(n.a) + ")";
  };
  std::ostringstream os;
  for (std::size_t i = 0; i < outputs_.size(); ++i) os << (i ? ";\n" : "") << render(outputs_[i]);
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

ExprBuilder& owner(Expr a, Expr b) {
  if (a.builder == nullptr || a.builder != b.builder) {
    throw Error(ErrorCode::invalid_argument, "expressions from different builders");
  }
  return *a.builder;
}

ExprBuilder& owner(Expr a) {
  if (a.builder == nullptr) throw Error(ErrorCode::invalid_argument, "null expression handle");
  return *a.builder;
}

Expr lit(Expr like, int v) { return owner(like).exact(static_cast<double>(v)); }

}  // namespace

Expr operator+(Expr a, Expr b) { return owner(a, b).binary(Op::add, a, b); }
Expr operator-(Expr a, Expr b) { return owner(a, b).binary(Op::sub, a, b); }
Expr operator*(Expr a, Expr b) { return owner(a, b).binary(Op::mul, a, b); }
Expr operator/(Expr a, Expr b) { return owner(a, b).binary(Op::div, a, b); }
Expr operator-(Expr a) { return owner(a).unary(Op::neg, a); }
Expr operator+(Expr a, int b) { return a + lit(a, b); }
Expr operator+(int a, Expr b) { return lit(b, a) + b; }
Expr operator-(Expr a, int b) { return a - lit(a, b); }
Expr operator-(int a, Expr b) { return lit(b, a) - b; }
Expr operator*(Expr a, int b) { return a * lit(a, b); }
Expr operator*(int a, Expr b) { return lit(b, a) * b; }
Expr operator/(Expr a, int b) { return a / lit(a, b); }
Expr operator/(int a, Expr b) { return lit(b, a) / b; }
Expr sin(Expr a) { return owner(a).unary(Op::sin, a); }
Expr cos(Expr a) { return owner(a).unary(Op::cos, a); }
Expr exp(Expr a) { return owner(a).unary(Op::exp, a); }
Expr ln(Expr a) { return owner(a).unary(Op::ln, a); }
Expr sqr(Expr a) { return owner(a).unary(Op::sqr, a); }
Expr sqrt(Expr a) { return owner(a).unary(Op::sqrt, a); }
Expr pow(Expr a, int n) { return owner(a).pow(a, n); }

VectorFunc compose(const VectorFunc& f, const VectorFunc& g) {
  if (g.output_dim() != f.state_dim()) {
    throw Error(ErrorCode::arity_error, "compose: inner function has " + std::to_string(g.output_dim()) +
                                            " outputs, outer expects " + std::to_string(f.state_dim()));
  }
  if (g.param_dim() != f.param_dim()) {
    throw Error(ErrorCode::arity_error, "compose: parameter dimensions differ");
  }
  ExprBuilder b(g.state_dim(), g.param_dim());
  const std::vector<Expr> inner = b.import(g);
  std::vector<Expr> params;
  for (std::size_t j = 0; j < g.param_dim(); ++j) params.push_back(b.param(j));
  const std::vector<Expr> outer = b.import(f, inner, params);
  return b.build(outer);
}

VectorFunc identity_map(std::size_t n, std::size_t p) {
  ExprBuilder b(n, p);
  std::vector<Expr> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(b.state(i));
  return b.build(xs);
}

}  // namespace intstab
