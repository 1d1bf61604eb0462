#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "pslet/errors.hpp"
#include "pslet/geometry.hpp"
#include "pslet/hierarchy.hpp"
#include "pslet/polynomial.hpp"
#include "pslet/quadrature.hpp"

namespace pslet {

/// Nodeless reduced wavefunction Psi_0 = exp(U(x)), U(0) = 0, from the
/// truncated lbar-series of U'(x). The full radial function is
/// R(rho) = Psi_0(rho) / sqrt(rho).
template <typename Scalar>
struct WavefunctionSeries
{
  Geometry<Scalar> geometry;
  /// terms[n] multiplies lbar^(-n/2): U^(n) + G^(n-1).
  std::vector<Poly<Scalar>> terms;
  Poly<Scalar> dU;
  Poly<Scalar> U;
  Scalar norm = Scalar(1);
  Scalar tail_fraction = Scalar(0);

  std::vector<Scalar> rho;
  std::vector<Scalar> psi;
  std::vector<Scalar> radial;

  Scalar unnormalized(Scalar r) const
  {
    using std::exp;
    return exp(poly_eval(U, geometry.x_of(r)));
  }
  Scalar psi_at(Scalar r) const { return norm * unnormalized(r); }
  Scalar radial_at(Scalar r) const
  {
    using std::sqrt;
    return psi_at(r) / sqrt(r);
  }
};

namespace detail {

template <typename Scalar>
WavefunctionSeries<Scalar> assemble_series(const Geometry<Scalar>& g, const CoefficientTable<Scalar>& t)
{
  using std::pow;
  WavefunctionSeries<Scalar> s;
  s.geometry = g;
  const int N = static_cast<int>(t.U.size()) - 1;
  s.dU = poly_zero<Scalar>();
  for (int n = 0; n <= N; ++n) {
    Poly<Scalar> term = t.U[n];
    if (n >= 1)
      term = poly_add(term, t.G[n - 1]);
    poly_axpy(s.dU, pow(g.lbar, -Scalar(n) / Scalar(2)), term);
    s.terms.push_back(std::move(term));
  }
  s.U = poly_integrate(s.dU);
  return s;
}

// Mass beyond the last node, from the local exponential decay of Psi^2.
template <typename Scalar>
Scalar outer_tail(const WavefunctionSeries<Scalar>& s, Scalar r)
{
  using std::exp;
  using std::sqrt;
  const Scalar x = s.geometry.x_of(r);
  const Scalar decay = -Scalar(2) * poly_eval(s.dU, x) * sqrt(s.geometry.lbar) / s.geometry.rho0;
  const Scalar p = exp(Scalar(2) * poly_eval(s.U, x));
  if (p == Scalar(0))
    return Scalar(0);
  if (!(decay > Scalar(0)))
    return std::numeric_limits<Scalar>::infinity();
  return p / decay;
}

} // namespace detail

/// Samples and normalizes Psi_0 on `grid` so that the Simpson integral of
/// Psi_0^2 over the grid is one.
template <typename Scalar = double>
WavefunctionSeries<Scalar> synthesize_wavefunction(const Geometry<Scalar>& g,
                                                   const CoefficientTable<Scalar>& table,
                                                   std::span<const Scalar> grid,
                                                   Scalar tail_tolerance = Scalar(1e-6))
{
  using std::isfinite;
  using std::sqrt;
  if (grid.size() < 2)
    throw SolverError(SolverError::Kind::GridError, "wavefunction grid needs at least two points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > Scalar(0)))
      throw SolverError(SolverError::Kind::GridError, "wavefunction grid must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw SolverError(SolverError::Kind::GridError, "wavefunction grid not strictly increasing");
  }

  WavefunctionSeries<Scalar> s = detail::assemble_series(g, table);
  s.rho.assign(grid.begin(), grid.end());
  std::vector<Scalar> unnorm(grid.size()), sq(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    unnorm[i] = s.unnormalized(grid[i]);
    if (!isfinite(unnorm[i]))
      throw SolverError(SolverError::Kind::GridError, "wavefunction overflows on the grid");
    sq[i] = unnorm[i] * unnorm[i];
  }
  const Scalar mass = simpson<Scalar>(grid, sq);
  if (!(mass > Scalar(0)) || !isfinite(mass))
    throw SolverError(SolverError::Kind::GridError, "wavefunction has no mass on the grid");
  s.tail_fraction = detail::outer_tail(s, grid.back()) / mass;
  if (!(s.tail_fraction <= tail_tolerance))
    throw SolverError(SolverError::Kind::GridError, "grid does not cover the support of the wavefunction");

  s.norm = Scalar(1) / sqrt(mass);
  s.psi.resize(grid.size());
  s.radial.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s.psi[i] = s.norm * unnorm[i];
    s.radial[i] = s.psi[i] / sqrt(grid[i]);
  }
  return s;
}

/// Uniform grid on (0, rho_max], rho_max doubled from 2 rho0 until the
/// estimated outer tail mass drops below `tail_tolerance`.
template <typename Scalar = double>
std::vector<Scalar> default_grid(const Geometry<Scalar>& g,
                                 const CoefficientTable<Scalar>& table,
                                 int points = 4001,
                                 Scalar tail_tolerance = Scalar(1e-8))
{
  const WavefunctionSeries<Scalar> s = detail::assemble_series(g, table);
  Scalar rho_max = Scalar(2) * g.rho0;
  std::vector<Scalar> grid(points);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Scalar h = rho_max / Scalar(points);
    std::vector<Scalar> sq(points);
    for (int i = 0; i < points; ++i) {
      grid[i] = h * Scalar(i + 1);
      const Scalar u = s.unnormalized(grid[i]);
      sq[i] = u * u;
    }
    const Scalar mass = simpson<Scalar>(grid, sq);
    if (mass > Scalar(0) && detail::outer_tail(s, rho_max) / mass < tail_tolerance)
      return grid;
    rho_max *= Scalar(2);
  }
  throw SolverError(SolverError::Kind::GridError, "wavefunction is not normalizable");
}

/// Overlap <a|b> / sqrt(<a|a><b|b>) of two sampled functions on a grid.
template <typename Scalar>
Scalar overlap(std::span<const Scalar> grid, std::span<const Scalar> a, std::span<const Scalar> b)
{
  using std::sqrt;
  std::vector<Scalar> ab(grid.size()), aa(grid.size()), bb(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ab[i] = a[i] * b[i];
    aa[i] = a[i] * a[i];
    bb[i] = b[i] * b[i];
  }
  return simpson<Scalar>(grid, ab) / sqrt(simpson<Scalar>(grid, aa) * simpson<Scalar>(grid, bb));
}

} // namespace pslet
