#pragma once

#include "pslet/energy.hpp"
#include "pslet/geometry.hpp"
#include "pslet/hierarchy.hpp"

namespace pslet {

template <typename Scalar>
struct Solution
{
  Geometry<Scalar> geometry;
  VSeries<Scalar> v;
  CoefficientTable<Scalar> table;
  EnergyBreakdown<Scalar> energy;
};

/// Frame, perturbation polynomials, hierarchy and energies through EN_max_order.
template <typename Scalar = double>
Solution<Scalar> solve(const ProblemInput& in, int max_order = 3, const FrameOptions& opt = {})
{
  if (max_order < 1)
    throw std::invalid_argument("order must be at least 1");
  Solution<Scalar> s;
  s.geometry = solve_geometry<Scalar>(in, opt);
  s.v = build_v_series<Scalar>(in.potential, s.geometry, max_order);
  s.table = solve_hierarchy<Scalar>(s.v, s.geometry, max_order);
  s.energy = assemble_energy<Scalar>(s.geometry, s.table, in.potential, max_order);
  return s;
}

} // namespace pslet
