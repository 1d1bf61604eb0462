#pragma once

#include <Eigen/Dense>
#include <cassert>
#include <cmath>
#include <string>

#include "pslet/errors.hpp"
#include "pslet/expr.hpp"

namespace pslet {

/// Truncated Taylor expansion of a function of rho about `center`:
/// coeffs[k] = f^(k)(center) / k!, for k = 0..order.
template <typename Scalar>
class Jet
{
public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Jet(Scalar center, Coeffs coeffs) : center_(center), coeffs_(std::move(coeffs))
  {
    assert(coeffs_.size() >= 1);
  }

  static Jet constant(Scalar center, int order, Scalar value)
  {
    Coeffs c = Coeffs::Zero(order + 1);
    c[0] = value;
    return Jet(center, std::move(c));
  }

  /// The identity function rho itself.
  static Jet variable(Scalar center, int order)
  {
    Coeffs c = Coeffs::Zero(order + 1);
    c[0] = center;
    if (order >= 1)
      c[1] = Scalar(1);
    return Jet(center, std::move(c));
  }

  Scalar center() const { return center_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Coeffs& coeffs() const { return coeffs_; }
  Coeffs& coeffs() { return coeffs_; }
  Scalar operator[](int k) const { return coeffs_[k]; }

private:
  Scalar center_;
  Coeffs coeffs_;
};

/// k! * a_k, i.e. the k-th derivative at the center.
template <typename Scalar>
Scalar derivative(const Jet<Scalar>& jet, int k)
{
  if (k < 0 || k > jet.order())
    throw std::out_of_range("derivative order " + std::to_string(k) +
                            " outside jet of order " + std::to_string(jet.order()));
  Scalar fact(1);
  for (int i = 2; i <= k; ++i)
    fact *= Scalar(i);
  return fact * jet[k];
}

template <typename Scalar>
Jet<Scalar> operator+(const Jet<Scalar>& a, const Jet<Scalar>& b)
{
  return Jet<Scalar>(a.center(), a.coeffs() + b.coeffs());
}

template <typename Scalar>
Jet<Scalar> operator-(const Jet<Scalar>& a, const Jet<Scalar>& b)
{
  return Jet<Scalar>(a.center(), a.coeffs() - b.coeffs());
}

template <typename Scalar>
Jet<Scalar> operator-(const Jet<Scalar>& a)
{
  return Jet<Scalar>(a.center(), -a.coeffs());
}

// Cauchy product truncated at the common order.
template <typename Scalar>
Jet<Scalar> operator*(const Jet<Scalar>& a, const Jet<Scalar>& b)
{
  const int n = a.order();
  typename Jet<Scalar>::Coeffs c = Jet<Scalar>::Coeffs::Zero(n + 1);
  for (int k = 0; k <= n; ++k) {
    Scalar s(0);
    for (int i = 0; i <= k; ++i)
      s += a[i] * b[k - i];
    c[k] = s;
  }
  return Jet<Scalar>(a.center(), std::move(c));
}

template <typename Scalar>
Jet<Scalar> operator/(const Jet<Scalar>& a, const Jet<Scalar>& b)
{
  if (b[0] == Scalar(0))
    throw EvalError("pole: division by a series with zero constant term");
  const int n = a.order();
  typename Jet<Scalar>::Coeffs q(n + 1);
  for (int k = 0; k <= n; ++k) {
    Scalar s = a[k];
    for (int i = 1; i <= k; ++i)
      s -= b[i] * q[k - i];
    q[k] = s / b[0];
  }
  return Jet<Scalar>(a.center(), std::move(q));
}

template <typename Scalar>
Jet<Scalar> powi(const Jet<Scalar>& base, long n)
{
  if (n < 0)
    return Jet<Scalar>::constant(base.center(), base.order(), Scalar(1)) / powi(base, -n);
  Jet<Scalar> result = Jet<Scalar>::constant(base.center(), base.order(), Scalar(1));
  Jet<Scalar> b = base;
  while (n > 0) {
    if (n & 1)
      result = result * b;
    n >>= 1;
    if (n > 0)
      b = b * b;
  }
  return result;
}

/// base^p for a real constant p; needs base[0] > 0.
template <typename Scalar>
Jet<Scalar> powr(const Jet<Scalar>& base, Scalar p)
{
  using std::pow;
  const Scalar a0 = base[0];
  if (!(a0 > Scalar(0)))
    throw EvalError("non-positive base raised to a non-integer power");
  const int n = base.order();
  typename Jet<Scalar>::Coeffs c(n + 1);
  c[0] = pow(a0, p);
  for (int k = 1; k <= n; ++k) {
    Scalar s(0);
    for (int j = 1; j <= k; ++j)
      s += ((p + Scalar(1)) * Scalar(j) - Scalar(k)) * base[j] * c[k - j];
    c[k] = s / (Scalar(k) * a0);
  }
  return Jet<Scalar>(base.center(), std::move(c));
}

template <typename Scalar>
Jet<Scalar> log(const Jet<Scalar>& a)
{
  using std::log;
  if (!(a[0] > Scalar(0)))
    throw EvalError("logarithm of a non-positive value");
  const int n = a.order();
  typename Jet<Scalar>::Coeffs c(n + 1);
  c[0] = log(a[0]);
  for (int k = 1; k <= n; ++k) {
    Scalar s = a[k];
    for (int j = 1; j < k; ++j)
      s -= Scalar(j) * c[j] * a[k - j] / Scalar(k);
    c[k] = s / a[0];
  }
  return Jet<Scalar>(a.center(), std::move(c));
}

template <typename Scalar>
Jet<Scalar> exp(const Jet<Scalar>& f)
{
  using std::exp;
  const int n = f.order();
  typename Jet<Scalar>::Coeffs c(n + 1);
  c[0] = exp(f[0]);
  for (int k = 1; k <= n; ++k) {
    Scalar s(0);
    for (int j = 1; j <= k; ++j)
      s += Scalar(j) * f[j] * c[k - j];
    c[k] = s / Scalar(k);
  }
  return Jet<Scalar>(f.center(), std::move(c));
}

namespace detail {

template <typename Scalar>
Jet<Scalar> lift_node(const Node& node, const BoundPotential& bound, Scalar center, int order)
{
  switch (node.op) {
    case Op::Constant:
      return Jet<Scalar>::constant(center, order, Scalar(node.value));
    case Op::Variable:
      return Jet<Scalar>::variable(center, order);
    case Op::Parameter:
      return Jet<Scalar>::constant(center, order, Scalar(bound.param(node.name)));
    case Op::Neg:
      return -lift_node(*node.lhs, bound, center, order);
    case Op::Add:
      return lift_node(*node.lhs, bound, center, order) + lift_node(*node.rhs, bound, center, order);
    case Op::Sub:
      return lift_node(*node.lhs, bound, center, order) - lift_node(*node.rhs, bound, center, order);
    case Op::Mul:
      return lift_node(*node.lhs, bound, center, order) * lift_node(*node.rhs, bound, center, order);
    case Op::Div:
      return lift_node(*node.lhs, bound, center, order) / lift_node(*node.rhs, bound, center, order);
    case Op::Pow: {
      Jet<Scalar> base = lift_node(*node.lhs, bound, center, order);
      if (!node.rhs->depends_on_rho) {
        const Scalar p = eval_node(*node.rhs, bound, center);
        if (auto n = integral_exponent(static_cast<double>(p)))
          return powi(base, *n);
        return powr(base, p);
      }
      Jet<Scalar> expo = lift_node(*node.rhs, bound, center, order);
      return exp(expo * log(base));
    }
  }
  throw EvalError("unknown node");
}

} // namespace detail

/// Taylor coefficients of V about `center` through `order`, by truncated
/// series arithmetic over the expression tree.
template <typename Scalar = double>
Jet<Scalar> jet_lift(const BoundPotential& bound, Scalar center, int order)
{
  using std::isfinite;
  if (!(center > Scalar(0)))
    throw EvalError("jet center must be positive");
  if (order < 0)
    throw std::invalid_argument("jet order must be non-negative");
  Jet<Scalar> jet = detail::lift_node(bound.spec().root(), bound, center, order);
  for (int k = 0; k <= order; ++k)
    if (!isfinite(jet[k]))
      throw EvalError("non-finite Taylor coefficient of order " + std::to_string(k));
  return jet;
}

} // namespace pslet
