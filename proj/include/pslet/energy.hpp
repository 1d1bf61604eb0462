#pragma once

#include <cmath>
#include <vector>

#include "pslet/errors.hpp"
#include "pslet/expr.hpp"
#include "pslet/geometry.hpp"
#include "pslet/hierarchy.hpp"

namespace pslet {

/// Energy series E = E^(-2) lbar^2 + E^(-1) lbar + E^(0) + E^(1)/lbar + ...
/// and its cumulative partial sums EN_0..EN_K.
template <typename Scalar>
struct EnergyBreakdown
{
  Scalar e_minus2;
  Scalar e_minus1;                 // vanishes by the choice of beta
  std::vector<Scalar> corrections; // E^(0), E^(1), ..., E^(K-1)
  std::vector<Scalar> partial_sums; // EN_0, ..., EN_K

  /// E^(k) for k >= -2.
  Scalar correction(int k) const
  {
    if (k == -2)
      return e_minus2;
    if (k == -1)
      return e_minus1;
    return corrections.at(k);
  }
  Scalar total() const { return partial_sums.back(); }
};

template <typename Scalar = double>
EnergyBreakdown<Scalar> assemble_energy(const Geometry<Scalar>& g,
                                        const CoefficientTable<Scalar>& table,
                                        const BoundPotential& bound,
                                        int max_order,
                                        Scalar beta_tolerance = Scalar(1e-10))
{
  using std::abs;
  using std::pow;
  if (static_cast<int>(table.lambda.size()) < max_order)
    throw SolverError(SolverError::Kind::HierarchyInconsistency, "coefficient table shorter than requested order");

  const Scalar r2 = g.rho0 * g.rho0;
  EnergyBreakdown<Scalar> e;
  e.e_minus2 = Scalar(1) / r2 + eval<Scalar>(bound, g.rho0) / g.Q;
  e.e_minus1 = (Scalar(2) * g.beta + (Scalar(g.n_rho) + Scalar(0.5)) * g.w) / r2;
  if (!(abs(e.e_minus1) <= beta_tolerance))
    throw SolverError(SolverError::Kind::HierarchyInconsistency, "shift does not cancel E^(-1)");

  for (int k = 0; k < max_order; ++k) {
    Scalar c = table.lambda[k] / r2;
    if (k == 0)
      c += (g.beta * g.beta - Scalar(0.25)) / r2;
    e.corrections.push_back(c);
  }

  e.partial_sums.push_back(g.lbar * g.lbar * e.e_minus2);
  for (int k = 1; k <= max_order; ++k)
    e.partial_sums.push_back(e.partial_sums.back() + e.corrections[k - 1] / pow(g.lbar, k - 1));
  return e;
}

} // namespace pslet
