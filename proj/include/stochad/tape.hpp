#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "stochad/indicator_diff.hpp"
#include "stochad/random_variable.hpp"

namespace stochad {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

enum class OpKind : std::uint8_t {
  Leaf,
  Add,
  Sub,
  Mul,
  Div,
  Exp,
  Log,
  Sqrt,
  Max,
  Indicator,
};

/// One recorded operation: kind, up to two parents, and the forward value.
/// An indicator node's trigger X is its parent's value, kept on the tape
/// verbatim so the differentiation strategy can inspect it during the
/// reverse sweep.
struct OperationNode {
  OpKind kind = OpKind::Leaf;
  NodeId a = kNoNode;
  NodeId b = kNoNode;
  RandomVariable value;
};

/// Path-wise adjoints of every node after a reverse sweep. Nodes the sweep
/// never reached hold a deterministic zero. The final expectation of the
/// valuation is NOT part of the tape; apply expectation() to the adjoint of
/// the parameter node to obtain the derivative of the expected value.
struct AdjointResult {
  std::vector<RandomVariable> adjoints;

  const RandomVariable& adjoint(NodeId id) const;
};

class Var;

/// Append-only record of RandomVariable operations supporting reverse-mode
/// differentiation. Node ids are dense and increasing, so parents always
/// precede children and a reverse id scan is a valid anti-topological order.
class Tape {
 public:
  /// Records an undifferentiated input (constant or parameter).
  Var leaf(RandomVariable value);
  Var leaf(double value);

  NodeId record_unary(OpKind kind, NodeId parent, RandomVariable value);
  NodeId record_binary(OpKind kind, NodeId a, NodeId b, RandomVariable value);

  std::size_t size() const { return nodes_.size(); }
  const OperationNode& node(NodeId id) const;
  const RandomVariable& value(NodeId id) const { return node(id).value; }

  /// Reverse sweep from `result`, seeding its adjoint with the constant 1.
  /// Each node is visited once; local derivatives follow the textbook rules
  /// (the max subgradient sends the adjoint to the larger operand, ties to
  /// the second), and at an indicator node the derivative is replaced by
  /// injection(X, strategy). Strategy failures are rethrown with the node id
  /// attached. Identical tape, strategy and paths give bitwise identical
  /// adjoints regardless of the execution mode.
  AdjointResult backward(NodeId result, const IndicatorDiffStrategy& strategy) const;

  /// expectation(adjoint of `input`), the derivative of the expected value
  /// of `result` with respect to a shift of the input.
  double derivative_of_expectation(NodeId result, NodeId input,
                                   const IndicatorDiffStrategy& strategy) const;

  /// Jump-size extraction without touching the single-sweep machinery: runs
  /// the reverse sweep twice, first with every indicator derivative replaced
  /// by the constant 1, then by 0, and returns the difference of the two
  /// adjoints of the indicator's trigger. Contributions that bypass the
  /// indicator cancel in the difference, leaving exactly the adjoint A
  /// arriving at the indicator. Intended for graphs whose only indicator is
  /// the one under analysis.
  RandomVariable adjoint_at_indicator_via_two_runs(NodeId result, NodeId indicator_node) const;

 private:
  friend class Var;
  using IndicatorDerivative =
      std::function<RandomVariable(const RandomVariable& trigger, NodeId node)>;

  AdjointResult backward_impl(NodeId result, const IndicatorDerivative& derivative) const;
  NodeId check(NodeId id) const;

  std::vector<OperationNode> nodes_;
};

/// Handle to a tape node; arithmetic on Var records new nodes. Operands must
/// live on the same tape.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, NodeId id) : tape_(tape), id_(id) {}

  Tape& tape() const;
  NodeId id() const { return id_; }
  const RandomVariable& value() const;

 private:
  Tape* tape_ = nullptr;
  NodeId id_ = kNoNode;
};

Var operator+(const Var& x, const Var& y);
Var operator+(const Var& x, double c);
Var operator+(double c, const Var& x);
Var operator-(const Var& x, const Var& y);
Var operator-(const Var& x, double c);
Var operator-(double c, const Var& x);
Var operator*(const Var& x, const Var& y);
Var operator*(const Var& x, double c);
Var operator*(double c, const Var& x);
Var operator/(const Var& x, const Var& y);
Var operator/(const Var& x, double c);
Var operator/(double c, const Var& x);
Var exp(const Var& x);
Var log(const Var& x);
Var sqrt(const Var& x);
Var max(const Var& x, const Var& y);
Var max(const Var& x, double c);
Var max(double c, const Var& x);
Var indicator(const Var& x);

}  // namespace stochad
