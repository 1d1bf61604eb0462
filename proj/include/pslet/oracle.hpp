#pragma once

#include "pslet/expr.hpp"

namespace pslet {

/// -(|m| + 1/2)^-2, nodeless 2D Coulomb levels for V = -2/rho.
double coulomb_exact(int m);

/// gamma (|m| + 1), nodeless 2D oscillator levels for V = gamma^2 rho^2 / 4.
double oscillator_exact(int m, double gamma);

struct FdGrid
{
  double rho_min = 1e-4;
  double rho_max = 20.0;
  int points = 4000;

  double spacing() const { return rho_max / points; }
  /// Throws SolverError(GridError) unless points >= 200,
  /// 0 < rho_min <= spacing()/2 and rho_max > rho_min.
  void validate() const;
};

/// Lowest eigenvalue of the radial operator on one mesh.
///
/// The equation is discretized in the self-adjoint form for
/// R = Psi / sqrt(rho), -(1/rho)(rho R')' + (l^2/rho^2 + V) R = E R,
/// on `points` cells of width h covering [0, rho_max]. Nodes sit at cell
/// centers (i + 1/2) h, so the innermost face is the origin and carries no
/// flux; R vanishes at rho_max. The symmetrized tridiagonal matrix is
/// solved by Sturm-count bisection.
double fd_ground_energy_single(const BoundPotential& bound, int l, const FdGrid& grid);

/// Richardson extrapolation (4 E(h/2) - E(h)) / 3 over `grid` and a mesh
/// with twice the cells.
double fd_ground_energy(const BoundPotential& bound, int l, const FdGrid& grid);

} // namespace pslet
