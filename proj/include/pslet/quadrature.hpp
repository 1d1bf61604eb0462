#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

namespace pslet {

/// Composite Simpson rule on a strictly increasing, possibly non-uniform
/// grid. An odd trailing interval is closed with the three-point quadratic
/// through the last nodes; two nodes fall back to the trapezoid.
template <typename Scalar>
Scalar simpson(std::span<const Scalar> x, std::span<const Scalar> f)
{
  if (x.size() != f.size())
    throw std::invalid_argument("simpson: size mismatch");
  const std::size_t n = x.size();
  if (n < 2)
    return Scalar(0);
  if (n == 2)
    return (x[1] - x[0]) * (f[0] + f[1]) / Scalar(2);

  Scalar sum(0);
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const Scalar h0 = x[i + 1] - x[i];
    const Scalar h1 = x[i + 2] - x[i + 1];
    const Scalar hs = h0 + h1;
    sum += hs / Scalar(6) *
           ((Scalar(2) - h1 / h0) * f[i] + hs * hs / (h0 * h1) * f[i + 1] + (Scalar(2) - h0 / h1) * f[i + 2]);
  }
  if (i + 1 < n) {
    const Scalar h0 = x[n - 2] - x[n - 3];
    const Scalar h1 = x[n - 1] - x[n - 2];
    const Scalar a = (Scalar(2) * h1 * h1 + Scalar(3) * h0 * h1) / (Scalar(6) * (h0 + h1));
    const Scalar b = (h1 * h1 + Scalar(3) * h0 * h1) / (Scalar(6) * h0);
    const Scalar c = h1 * h1 * h1 / (Scalar(6) * h0 * (h0 + h1));
    sum += a * f[n - 1] + b * f[n - 2] - c * f[n - 3];
  }
  return sum;
}

} // namespace pslet
