#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pslet/errors.hpp"

namespace pslet {

// Expression trees for cylindrically symmetric potentials V(rho).
//
// Grammar (standard infix):
//   expr   := term   (('+' | '-') term)*
//   term   := unary  (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?          right-associative
//   atom   := number | identifier | '(' expr ')'
//
// The identifier `rho` is the radial variable; every other identifier is a
// named parameter.

enum class Op
{
  Constant,
  Variable,
  Parameter,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Neg,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node
{
  Op op;
  double value = 0.0;  // Constant
  std::string name;    // Parameter
  NodePtr lhs;         // Neg operand, or left operand of a binary op
  NodePtr rhs;
  bool depends_on_rho = false;

  static NodePtr constant(double v);
  static NodePtr variable();
  static NodePtr parameter(std::string name);
  static NodePtr unary(Op op, NodePtr operand);
  static NodePtr binary(Op op, NodePtr lhs, NodePtr rhs);
};

bool structurally_equal(const Node& a, const Node& b);

class PotentialSpec
{
public:
  /// Throws SolverError(NoStableFrame) if the tree never references `rho`.
  explicit PotentialSpec(NodePtr root);

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  /// Parameter names in order of first appearance.
  const std::vector<std::string>& params() const { return params_; }
  bool has_param(std::string_view name) const;

private:
  NodePtr root_;
  std::vector<std::string> params_;
};

PotentialSpec parse_potential(std::string_view text);

/// Minimal-parentheses infix rendering; parse(to_string(s)) reproduces the
/// tree exactly, including constants (shortest round-trip decimal form).
std::string to_string(const PotentialSpec& spec);
std::string to_string(const Node& node);

using ParamMap = std::map<std::string, double, std::less<>>;

class BoundPotential
{
public:
  BoundPotential(PotentialSpec spec, ParamMap values);

  const PotentialSpec& spec() const { return spec_; }
  const ParamMap& values() const { return values_; }
  double param(const std::string& name) const;

private:
  PotentialSpec spec_;
  ParamMap values_;
};

/// Binds every parameter of `spec`. A missing parameter is always an error;
/// an extraneous one is an error when `strict`, otherwise it is dropped and
/// reported through `warnings`.
BoundPotential bind_params(const PotentialSpec& spec,
                           const ParamMap& values,
                           bool strict = true,
                           std::vector<std::string>* warnings = nullptr);

namespace detail {

/// Integer value of a rho-independent exponent, if it has one.
std::optional<long> integral_exponent(double e);

template <typename Scalar>
Scalar ipow(Scalar base, long n)
{
  if (n < 0) {
    if (base == Scalar(0))
      throw EvalError("pole: zero raised to a negative power");
    return Scalar(1) / ipow(base, -n);
  }
  Scalar result(1);
  while (n > 0) {
    if (n & 1)
      result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

template <typename Scalar>
Scalar eval_node(const Node& node, const BoundPotential& bound, Scalar rho)
{
  using std::pow;
  switch (node.op) {
    case Op::Constant:
      return Scalar(node.value);
    case Op::Variable:
      return rho;
    case Op::Parameter:
      return Scalar(bound.param(node.name));
    case Op::Neg:
      return -eval_node(*node.lhs, bound, rho);
    case Op::Add:
      return eval_node(*node.lhs, bound, rho) + eval_node(*node.rhs, bound, rho);
    case Op::Sub:
      return eval_node(*node.lhs, bound, rho) - eval_node(*node.rhs, bound, rho);
    case Op::Mul:
      return eval_node(*node.lhs, bound, rho) * eval_node(*node.rhs, bound, rho);
    case Op::Div: {
      const Scalar den = eval_node(*node.rhs, bound, rho);
      if (den == Scalar(0))
        throw EvalError("pole: division by zero");
      return eval_node(*node.lhs, bound, rho) / den;
    }
    case Op::Pow: {
      const Scalar base = eval_node(*node.lhs, bound, rho);
      const Scalar expo = eval_node(*node.rhs, bound, rho);
      if (!node.rhs->depends_on_rho) {
        if (auto n = integral_exponent(static_cast<double>(expo)))
          return ipow(base, *n);
      }
      if (base == Scalar(0) && expo < Scalar(0))
        throw EvalError("pole: zero raised to a negative power");
      return pow(base, expo);
    }
  }
  throw EvalError("unknown node");
}

} // namespace detail

/// V(rho) for rho > 0.
template <typename Scalar = double>
Scalar eval(const BoundPotential& bound, Scalar rho)
{
  using std::isfinite;
  if (!(rho > Scalar(0)))
    throw EvalError("rho must be positive");
  const Scalar v = detail::eval_node(bound.spec().root(), bound, rho);
  if (!isfinite(v))
    throw EvalError("non-finite potential value");
  return v;
}

} // namespace pslet
