#include "stochad/tape.hpp"

#include <string>
#include <utility>

namespace stochad {

const RandomVariable& AdjointResult::adjoint(NodeId id) const {
  if (id >= adjoints.size()) throw Error("AdjointResult: node id out of range");
  return adjoints[id];
}

NodeId Tape::check(NodeId id) const {
  if (id >= nodes_.size()) throw Error("Tape: node id out of range");
  return id;
}

const OperationNode& Tape::node(NodeId id) const { return nodes_[check(id)]; }

Var Tape::leaf(RandomVariable value) {
  nodes_.push_back(OperationNode{OpKind::Leaf, kNoNode, kNoNode, std::move(value)});
  return Var(this, static_cast<NodeId>(nodes_.size() - 1));
}

Var Tape::leaf(double value) { return leaf(RandomVariable(value)); }

NodeId Tape::record_unary(OpKind kind, NodeId parent, RandomVariable value) {
  check(parent);
  nodes_.push_back(OperationNode{kind, parent, kNoNode, std::move(value)});
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Tape::record_binary(OpKind kind, NodeId a, NodeId b, RandomVariable value) {
  check(a);
  check(b);
  nodes_.push_back(OperationNode{kind, a, b, std::move(value)});
  return static_cast<NodeId>(nodes_.size() - 1);
}

AdjointResult Tape::backward_impl(NodeId result, const IndicatorDerivative& derivative) const {
  check(result);
  AdjointResult res;
  res.adjoints.assign(nodes_.size(), RandomVariable(0.0));
  std::vector<char> active(nodes_.size(), 0);
  res.adjoints[result] = RandomVariable(1.0);
  active[result] = 1;

  auto accumulate = [&](NodeId parent, const RandomVariable& contribution) {
    if (active[parent]) {
      res.adjoints[parent] = res.adjoints[parent] + contribution;
    } else {
      res.adjoints[parent] = contribution;
      active[parent] = 1;
    }
  };

  for (NodeId id = result + 1; id-- > 0;) {
    if (!active[id]) continue;
    const OperationNode& nd = nodes_[id];
    const RandomVariable& adj = res.adjoints[id];
    switch (nd.kind) {
      case OpKind::Leaf:
        break;
      case OpKind::Add:
        accumulate(nd.a, adj);
        accumulate(nd.b, adj);
        break;
      case OpKind::Sub:
        accumulate(nd.a, adj);
        accumulate(nd.b, -adj);
        break;
      case OpKind::Mul:
        accumulate(nd.a, adj * nodes_[nd.b].value);
        accumulate(nd.b, adj * nodes_[nd.a].value);
        break;
      case OpKind::Div: {
        // z = x / y: dz/dx = 1/y, dz/dy = -z/y. The forward pass already
        // rejected zero divisors.
        const RandomVariable& y = nodes_[nd.b].value;
        accumulate(nd.a, adj / y);
        accumulate(nd.b, -(adj * nd.value) / y);
        break;
      }
      case OpKind::Exp:
        accumulate(nd.a, adj * nd.value);
        break;
      case OpKind::Log:
        accumulate(nd.a, adj / nodes_[nd.a].value);
        break;
      case OpKind::Sqrt:
        accumulate(nd.a, (adj * 0.5) / nd.value);
        break;
      case OpKind::Max: {
        // Subgradient: toward the first operand where it is strictly larger,
        // toward the second otherwise (ties included).
        const RandomVariable mask = indicator(nodes_[nd.a].value - nodes_[nd.b].value);
        accumulate(nd.a, adj * mask);
        accumulate(nd.b, adj * (1.0 - mask));
        break;
      }
      case OpKind::Indicator: {
        const RandomVariable& trigger = nodes_[nd.a].value;
        accumulate(nd.a, adj * derivative(trigger, id));
        break;
      }
    }
  }
  return res;
}

AdjointResult Tape::backward(NodeId result, const IndicatorDiffStrategy& strategy) const {
  auto derivative = [&strategy](const RandomVariable& trigger, NodeId id) -> RandomVariable {
    try {
      return injection(trigger, strategy);
    } catch (const EmptyWindowError& e) {
      throw EmptyWindowError("indicator node " + std::to_string(id) + ": " + e.what());
    } catch (const SingularRegressionError& e) {
      throw SingularRegressionError("indicator node " + std::to_string(id) + ": " + e.what());
    } catch (const TooFewSamplesError& e) {
      throw TooFewSamplesError("indicator node " + std::to_string(id) + ": " + e.what());
    } catch (const RegressionError& e) {
      throw RegressionError("indicator node " + std::to_string(id) + ": " + e.what());
    }
  };
  return backward_impl(result, derivative);
}

double Tape::derivative_of_expectation(NodeId result, NodeId input,
                                       const IndicatorDiffStrategy& strategy) const {
  check(input);
  return expectation(backward(result, strategy).adjoint(input));
}

RandomVariable Tape::adjoint_at_indicator_via_two_runs(NodeId result, NodeId indicator_node) const {
  if (node(indicator_node).kind != OpKind::Indicator)
    throw Error("adjoint_at_indicator_via_two_runs: node " + std::to_string(indicator_node) +
                " is not an indicator");
  const NodeId trigger = nodes_[indicator_node].a;
  const auto ones = backward_impl(
      result, [](const RandomVariable&, NodeId) { return RandomVariable(1.0); });
  const auto zeros = backward_impl(
      result, [](const RandomVariable&, NodeId) { return RandomVariable(0.0); });
  return ones.adjoint(trigger) - zeros.adjoint(trigger);
}

namespace {

Tape& common_tape(const Var& x, const Var& y) {
  Tape& t = x.tape();
  if (&t != &y.tape()) throw Error("Var: operands recorded on different tapes");
  return t;
}

Var binary(OpKind kind, const Var& x, const Var& y, RandomVariable value) {
  Tape& t = common_tape(x, y);
  return Var(&t, t.record_binary(kind, x.id(), y.id(), std::move(value)));
}

Var unary(OpKind kind, const Var& x, RandomVariable value) {
  Tape& t = x.tape();
  return Var(&t, t.record_unary(kind, x.id(), std::move(value)));
}

}  // namespace

Tape& Var::tape() const {
  if (!tape_) throw Error("Var: empty handle");
  return *tape_;
}

const RandomVariable& Var::value() const { return tape().value(id_); }

Var operator+(const Var& x, const Var& y) { return binary(OpKind::Add, x, y, x.value() + y.value()); }
Var operator+(const Var& x, double c) { return x + x.tape().leaf(c); }
Var operator+(double c, const Var& x) { return x.tape().leaf(c) + x; }
Var operator-(const Var& x, const Var& y) { return binary(OpKind::Sub, x, y, x.value() - y.value()); }
Var operator-(const Var& x, double c) { return x - x.tape().leaf(c); }
Var operator-(double c, const Var& x) { return x.tape().leaf(c) - x; }
Var operator*(const Var& x, const Var& y) { return binary(OpKind::Mul, x, y, x.value() * y.value()); }
Var operator*(const Var& x, double c) { return x * x.tape().leaf(c); }
Var operator*(double c, const Var& x) { return x.tape().leaf(c) * x; }
Var operator/(const Var& x, const Var& y) { return binary(OpKind::Div, x, y, x.value() / y.value()); }
Var operator/(const Var& x, double c) { return x / x.tape().leaf(c); }
Var operator/(double c, const Var& x) { return x.tape().leaf(c) / x; }

Var exp(const Var& x) { return unary(OpKind::Exp, x, exp(x.value())); }
Var log(const Var& x) { return unary(OpKind::Log, x, log(x.value())); }
Var sqrt(const Var& x) { return unary(OpKind::Sqrt, x, sqrt(x.value())); }
Var max(const Var& x, const Var& y) { return binary(OpKind::Max, x, y, max(x.value(), y.value())); }
Var max(const Var& x, double c) { return max(x, x.tape().leaf(c)); }
Var max(double c, const Var& x) { return max(x.tape().leaf(c), x); }
Var indicator(const Var& x) { return unary(OpKind::Indicator, x, indicator(x.value())); }

}  // namespace stochad
