#include "pslet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "pslet/errors.hpp"

namespace pslet {

double coulomb_exact(int m)
{
  const double lb = std::abs(m) + 0.5;
  return -1.0 / (lb * lb);
}

double oscillator_exact(int m, double gamma)
{
  if (!(gamma > 0.0))
    throw std::invalid_argument("oscillator_exact: gamma must be positive");
  return gamma * (std::abs(m) + 1);
}

void FdGrid::validate() const
{
  if (points < 200)
    throw SolverError(SolverError::Kind::GridError, "fd grid needs at least 200 points");
  if (!(rho_min > 0.0) || !(rho_max > rho_min))
    throw SolverError(SolverError::Kind::GridError, "fd grid needs 0 < rho_min < rho_max");
  if (rho_min > spacing() / 2)
    throw SolverError(SolverError::Kind::GridError,
                      "fd grid: first node " + std::to_string(spacing() / 2) + " lies below rho_min");
}

namespace {

// Number of eigenvalues below x of the symmetric tridiagonal (d, e).
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x)
{
  int count = 0;
  double q = d[0] - x;
  if (q < 0)
    ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (q == 0.0)
      q = std::numeric_limits<double>::epsilon() * (std::abs(e[i - 1]) + 1.0);
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (q < 0)
      ++count;
  }
  return count;
}

} // namespace

double fd_ground_energy_single(const BoundPotential& bound, int l, const FdGrid& grid)
{
  if (grid.points < 200 || !(grid.rho_max > 0.0))
    throw SolverError(SolverError::Kind::GridError, "invalid fd grid");
  const int n = grid.points;
  const double h = grid.spacing();
  const double ll = double(l) * double(l);

  std::vector<double> d(n), e(n - 1);
  for (int i = 0; i < n; ++i) {
    const double c = (i + 0.5) * h;
    const double inner = i * h;  // zero at the origin face
    const double outer = (i + 1) * h;
    double v;
    try {
      v = eval(bound, c);
    } catch (const EvalError& err) {
      throw SolverError(SolverError::Kind::GridError, std::string("fd assembly: ") + err.what());
    }
    d[i] = (inner + outer) / (h * h * c) + ll / (c * c) + v;
    if (i + 1 < n) {
      const double cn = (i + 1.5) * h;
      e[i] = -outer / (h * h * std::sqrt(c * cn));
    }
    if (!std::isfinite(d[i]))
      throw SolverError(SolverError::Kind::GridError, "fd assembly: non-finite matrix entry");
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  if (sturm_count(d, e, hi) < 1 || sturm_count(d, e, lo) != 0)
    throw SolverError(SolverError::Kind::NonConvergence, "fd eigensolver: Gershgorin bracket failed");

  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    if (sturm_count(d, e, mid) >= 1)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid)))
      break;
  }
  const double result = 0.5 * (lo + hi);
  if (!std::isfinite(result))
    throw SolverError(SolverError::Kind::NonConvergence, "fd eigensolver did not converge");
  return result;
}

double fd_ground_energy(const BoundPotential& bound, int l, const FdGrid& grid)
{
  grid.validate();
  FdGrid fine = grid;
  fine.points = 2 * grid.points;
  const double coarse = fd_ground_energy_single(bound, l, grid);
  const double refined = fd_ground_energy_single(bound, l, fine);
  return (4.0 * refined - coarse) / 3.0;
}

} // namespace pslet
