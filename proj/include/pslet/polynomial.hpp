#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace pslet {

/// Dense polynomial in one variable, coefficient k multiplies x^k.
template <typename Scalar>
using Poly = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
Poly<Scalar> poly_zero(Eigen::Index size = 1)
{
  return Poly<Scalar>::Zero(std::max<Eigen::Index>(size, 1));
}

/// Zero-pads `p` to at least `size` coefficients.
template <typename Scalar>
Poly<Scalar> padded(const Poly<Scalar>& p, Eigen::Index size)
{
  if (p.size() >= size)
    return p;
  Poly<Scalar> out = Poly<Scalar>::Zero(size);
  out.head(p.size()) = p;
  return out;
}

template <typename Scalar>
Poly<Scalar> poly_add(const Poly<Scalar>& a, const Poly<Scalar>& b)
{
  const Eigen::Index n = std::max(a.size(), b.size());
  return padded(a, n) + padded(b, n);
}

/// a += s * b, growing a as needed.
template <typename Scalar>
void poly_axpy(Poly<Scalar>& a, Scalar s, const Poly<Scalar>& b)
{
  if (a.size() < b.size())
    a = padded(a, b.size());
  a.head(b.size()) += s * b;
}

template <typename Scalar>
Poly<Scalar> poly_mul(const Poly<Scalar>& a, const Poly<Scalar>& b)
{
  Poly<Scalar> out = Poly<Scalar>::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] == Scalar(0))
      continue;
    out.segment(i, b.size()) += a[i] * b;
  }
  return out;
}

template <typename Scalar>
Poly<Scalar> poly_derivative(const Poly<Scalar>& p)
{
  if (p.size() <= 1)
    return poly_zero<Scalar>();
  Poly<Scalar> out(p.size() - 1);
  for (Eigen::Index k = 1; k < p.size(); ++k)
    out[k - 1] = Scalar(k) * p[k];
  return out;
}

/// Antiderivative vanishing at x = 0.
template <typename Scalar>
Poly<Scalar> poly_integrate(const Poly<Scalar>& p)
{
  Poly<Scalar> out = Poly<Scalar>::Zero(p.size() + 1);
  for (Eigen::Index k = 0; k < p.size(); ++k)
    out[k + 1] = p[k] / Scalar(k + 1);
  return out;
}

template <typename Scalar, typename X>
X poly_eval(const Poly<Scalar>& p, X x)
{
  X acc(0);
  for (Eigen::Index k = p.size() - 1; k >= 0; --k)
    acc = acc * x + X(p[k]);
  return acc;
}

/// Coefficients of the given parity (0 even, 1 odd); the rest zeroed.
template <typename Scalar>
Poly<Scalar> parity_part(const Poly<Scalar>& p, int parity)
{
  Poly<Scalar> out = Poly<Scalar>::Zero(p.size());
  for (Eigen::Index k = parity; k < p.size(); k += 2)
    out[k] = p[k];
  return out;
}

/// Largest |coefficient| of the given parity.
template <typename Scalar>
Scalar parity_max(const Poly<Scalar>& p, int parity)
{
  using std::abs;
  Scalar m(0);
  for (Eigen::Index k = parity; k < p.size(); k += 2)
    m = std::max(m, Scalar(abs(p[k])));
  return m;
}

/// Index of the highest coefficient with |c| > tol, or -1 for the zero
/// polynomial.
template <typename Scalar>
Eigen::Index poly_degree(const Poly<Scalar>& p, Scalar tol = Scalar(0))
{
  using std::abs;
  for (Eigen::Index k = p.size() - 1; k >= 0; --k)
    if (abs(p[k]) > tol)
      return k;
  return -1;
}

} // namespace pslet
