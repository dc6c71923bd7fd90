#pragma once

// Expression DAGs for vector functions f: R^n x R^p -> R^m.
//
// Nodes are hash-consed and stored in topological order, so evaluation is a
// single forward sweep. The builder applies a few exact algebraic identities
// (x+0, x*1, x-x, 0*x, constant folding in interval arithmetic). They agree
// with the original expression wherever it is defined; this is what makes
// f(xbar, m) - f(xbar, m) collapse to an exact zero when centring.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "intstab/box.hpp"
#include "intstab/interval.hpp"

namespace intstab {

using NodeId = std::uint32_t;

enum class Op : std::uint8_t {
  constant,
  state,
  param,
  add,
  sub,
  mul,
  div,
  neg,
  sqr,
  sqrt,
  exp,
  ln,
  sin,
  cos,
  pow,
};

const char* op_name(Op op);
bool is_binary(Op op);
bool is_unary(Op op);

struct Node {
  Op op = Op::constant;
  NodeId a = 0;
  NodeId b = 0;
  std::int32_t k = 0;  // variable index, or exponent for pow
  Interval value;      // constants only
  std::string name;    // named constants ("pi", decimal literals)
};

class ExprBuilder;

/// Lightweight handle to a node inside an ExprBuilder.
struct Expr {
  ExprBuilder* builder = nullptr;
  NodeId id = 0;
};

/// Immutable vector function; cheap to copy (shared node storage).
class VectorFunc {
 public:
  VectorFunc() = default;

  std::size_t state_dim() const noexcept { return n_; }
  std::size_t param_dim() const noexcept { return p_; }
  std::size_t output_dim() const noexcept { return outputs_.size(); }

  std::span<const Node> nodes() const { return *nodes_; }
  std::span<const NodeId> outputs() const { return outputs_; }
  /// Per node: does its value depend on a state variable?
  std::span<const char> state_dependent() const { return *state_dep_; }

  /// Human-readable rendering, one output per line.
  std::string to_string() const;

 private:
  friend class ExprBuilder;

  std::shared_ptr<const std::vector<Node>> nodes_ = std::make_shared<const std::vector<Node>>();
  std::shared_ptr<const std::vector<char>> state_dep_ = std::make_shared<const std::vector<char>>();
  std::vector<NodeId> outputs_;
  std::size_t n_ = 0;
  std::size_t p_ = 0;
};

/// Hash-consing node factory. Not thread-safe; build, then share the
/// resulting VectorFunc.
class ExprBuilder {
 public:
  ExprBuilder(std::size_t state_dim, std::size_t param_dim);
  ExprBuilder(const ExprBuilder&) = delete;
  ExprBuilder& operator=(const ExprBuilder&) = delete;

  std::size_t state_dim() const noexcept { return n_; }
  std::size_t param_dim() const noexcept { return p_; }

  Expr state(std::size_t i);
  Expr param(std::size_t j);
  /// Exactly representable real.
  Expr exact(double v);
  /// Decimal literal, e.g. "2.4"; equal texts denote the same real.
  Expr decimal(const std::string& text);
  Expr pi();
  /// A real known only through an enclosure. Each call is a distinct
  /// unknown; reuse the handle when the same real appears twice.
  Expr constant(const Interval& enclosure);

  Expr unary(Op op, Expr a);
  Expr binary(Op op, Expr a, Expr b);
  Expr pow(Expr a, int n);

  const Node& node(NodeId id) const { return nodes_[id]; }

  /// Re-creates f's graph inside this builder with its state and parameter
  /// variables replaced by the given expressions. Returns f's outputs.
  std::vector<Expr> import(const VectorFunc& f, std::span<const Expr> states,
                           std::span<const Expr> params);
  /// import() with this builder's own variables.
  std::vector<Expr> import(const VectorFunc& f);

  /// Snapshot of the sub-DAG reachable from `outputs`.
  VectorFunc build(std::span<const Expr> outputs) const;

 private:
  using Key = std::tuple<Op, NodeId, NodeId, std::int32_t, double, double, std::string, std::uint64_t>;

  NodeId intern(Node node, std::uint64_t serial = 0);
  NodeId make(Op op, NodeId a, NodeId b, std::int32_t k);
  bool try_simplify(Op op, NodeId a, NodeId b, std::int32_t k, NodeId& out);
  bool is_exact(NodeId id, double v) const;
  bool is_const(NodeId id) const { return nodes_[id].op == Op::constant; }
  Expr wrap(NodeId id) { return Expr{this, id}; }
  void check_owner(Expr e) const;

  std::size_t n_;
  std::size_t p_;
  std::vector<Node> nodes_;
  std::map<Key, NodeId> index_;
  std::map<std::pair<const void*, NodeId>, NodeId> imported_;
  std::vector<VectorFunc> pinned_;  // keeps imported node storage (and its address) alive
  std::uint64_t next_serial_ = 1;
};

// Operator sugar for building scenario maps. Plain integers are exact; use
// ExprBuilder::decimal for any literal that is not.
Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);
Expr operator+(Expr a, int b);
Expr operator+(int a, Expr b);
Expr operator-(Expr a, int b);
Expr operator-(int a, Expr b);
Expr operator*(Expr a, int b);
Expr operator*(int a, Expr b);
Expr operator/(Expr a, int b);
Expr operator/(int a, Expr b);
Expr sin(Expr a);
Expr cos(Expr a);
Expr exp(Expr a);
Expr ln(Expr a);
Expr sqr(Expr a);
Expr sqrt(Expr a);
Expr pow(Expr a, int n);

/// f o g. Requires g.output_dim() == f.state_dim() and equal parameter dims.
VectorFunc compose(const VectorFunc& f, const VectorFunc& g);

/// x -> x on R^n (p parameters, unused).
VectorFunc identity_map(std::size_t n, std::size_t p = 0);

}  // namespace intstab
