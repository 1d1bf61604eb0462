#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pslet/errors.hpp"
#include "pslet/geometry.hpp"
#include "pslet/jet.hpp"
#include "pslet/polynomial.hpp"

namespace pslet {

/// Number of half-orders in lbar^(-1/2) needed for the energy partial sum
/// EN_K: the correction lambda^(k) is fixed by the order n = 2k + 2 balance.
constexpr int half_orders_for(int max_order) { return 2 * max_order; }

/// Perturbation polynomials v^(0..N)(x) of the shifted radial equation,
/// where the effective potential reads rho0^2 lbar E^(-2) + sum_n v^(n) lbar^(-n/2).
template <typename Scalar>
struct VSeries
{
  std::vector<Poly<Scalar>> v;

  /// Cubic coefficient of v^(1).
  Scalar B1() const { return v.at(1)[3]; }
  /// Quartic coefficient of v^(2).
  Scalar B2() const { return v.at(2)[4]; }
  int max_half_order() const { return static_cast<int>(v.size()) - 1; }
};

/// v^(n) for n = 0..half_orders_for(max_order), from the Taylor jet of V at
/// rho0 (order 2*max_order + 2).
template <typename Scalar = double>
VSeries<Scalar> build_v_series(const BoundPotential& bound, const Geometry<Scalar>& g, int max_order)
{
  using std::pow;
  const int N = std::max(half_orders_for(max_order), 2);
  const Jet<Scalar> jet = jet_lift<Scalar>(bound, g.rho0, N + 2);
  if (jet.order() < N + 2)
    throw SolverError(SolverError::Kind::HierarchyInconsistency, "jet order insufficient for v-series");

  const Scalar beta = g.beta;
  const Scalar b2q = beta * beta - Scalar(0.25);
  VSeries<Scalar> out;
  out.v.reserve(N + 1);

  Poly<Scalar> v0 = Poly<Scalar>::Zero(3);
  v0[0] = Scalar(2) * beta;
  v0[2] = g.w * g.w / Scalar(4);
  out.v.push_back(v0);

  Scalar rho_pow = pow(g.rho0, 5);  // rho0^(n+4) at n = 1
  for (int n = 1; n <= N; ++n) {
    const Scalar sign = (n % 2 == 0) ? Scalar(1) : Scalar(-1);
    Poly<Scalar> vn = Poly<Scalar>::Zero(n + 3);
    vn[n] += sign * Scalar(2) * beta * Scalar(n + 1);
    if (n >= 2)
      vn[n - 2] += sign * b2q * Scalar(n - 1);
    // a_{n+2} = V^(n+2)(rho0) / (n+2)!
    vn[n + 2] += sign * Scalar(n + 3) + rho_pow * jet[n + 2] / g.Q;
    out.v.push_back(std::move(vn));
    rho_pow *= g.rho0;
  }
  return out;
}

/// Solved coefficient hierarchy: U'(x) = sum_n U^(n) lbar^(-n/2) + sum_n G^(n) lbar^(-(n+1)/2).
template <typename Scalar>
struct CoefficientTable
{
  std::vector<Poly<Scalar>> U;       // odd, U[0] = -(w/2) x
  std::vector<Poly<Scalar>> G;       // even
  std::vector<Scalar> lambda;        // lambda^(0..K-1)
  std::vector<Scalar> residual;      // max |coefficient| of the order-n balance, n = 1..N
  int max_order = 0;

  /// D_{j,n}: coefficient of x^(2j-1) in U^(n).
  Scalar D(int j, int n) const
  {
    if (j <= 0)
      return Scalar(0);
    const auto& p = U.at(n);
    return (2 * j - 1 < p.size()) ? p[2 * j - 1] : Scalar(0);
  }
  /// C_{j,n}: coefficient of x^(2j) in G^(n).
  Scalar C(int j, int n) const
  {
    const auto& p = G.at(n);
    return (2 * j < p.size()) ? p[2 * j] : Scalar(0);
  }
};

namespace detail {

/// Everything in the order-n balance except the terms linear in the unknowns
/// U^(n), G^(n-1):
///   v^(n) - sum_{p=1}^{n-1} U^(p) U^(n-p) - sum_{p=0}^{n-2} G^(p) G^(n-2-p)
///         - 2 sum_{p=1}^{n-1} U^(p) G^(n-1-p)
template <typename Scalar>
Poly<Scalar> known_terms(const VSeries<Scalar>& vs,
                         const std::vector<Poly<Scalar>>& U,
                         const std::vector<Poly<Scalar>>& G,
                         int n)
{
  Poly<Scalar> k = vs.v.at(n);
  for (int p = 1; p <= n - 1; ++p)
    poly_axpy(k, Scalar(-1), poly_mul(U[p], U[n - p]));
  for (int p = 0; p <= n - 2; ++p)
    poly_axpy(k, Scalar(-1), poly_mul(G[p], G[n - 2 - p]));
  for (int p = 1; p <= n - 1; ++p)
    poly_axpy(k, Scalar(-2), poly_mul(U[p], G[n - 1 - p]));
  return k;
}

/// Full left side minus right side of the order-n balance.
template <typename Scalar>
Poly<Scalar> order_residual(const VSeries<Scalar>& vs,
                            const CoefficientTable<Scalar>& t,
                            Scalar beta,
                            int n)
{
  Poly<Scalar> r = known_terms(vs, t.U, t.G, n);
  poly_axpy(r, Scalar(-1), poly_derivative(t.U[n]));
  poly_axpy(r, Scalar(-1), poly_derivative(t.G[n - 1]));
  poly_axpy(r, Scalar(-2), poly_mul(t.U[0], t.U[n]));
  poly_axpy(r, Scalar(-2), poly_mul(t.U[0], t.G[n - 1]));
  if (n % 2 == 0) {
    Scalar rhs = t.lambda.at(n / 2 - 1);
    if (n == 2)
      rhs += beta * beta - Scalar(0.25);
    r[0] -= rhs;
  }
  return r;
}

} // namespace detail

/// Order-by-order matching of the Riccati form of the radial equation.
///
/// With U^(0) = -(w/2) x the unknowns of order n enter as -P' + w x P, so
/// the coefficient of x^k ties P_{k-1} to P_{k+1}: a triangular system solved
/// from the top degree down. The even part of the balance fixes the odd U^(n),
/// the odd part fixes the even G^(n-1); at even n the constant term of the
/// even part yields lambda^(n/2 - 1) (carrying beta^2 - 1/4 at n = 2).
template <typename Scalar = double>
CoefficientTable<Scalar> solve_hierarchy(const VSeries<Scalar>& vs,
                                         const Geometry<Scalar>& g,
                                         int max_order,
                                         Scalar tolerance = Scalar(1e-9))
{
  using std::abs;
  const int N = half_orders_for(max_order);
  if (vs.max_half_order() < N)
    throw SolverError(SolverError::Kind::HierarchyInconsistency, "v-series too short for requested order");

  CoefficientTable<Scalar> t;
  t.max_order = max_order;
  Poly<Scalar> u0 = Poly<Scalar>::Zero(2);
  u0[1] = -g.w / Scalar(2);
  t.U.push_back(u0);

  for (int n = 1; n <= N; ++n) {
    const Poly<Scalar> known = detail::known_terms(vs, t.U, t.G, n);
    const Eigen::Index deg = known.size() - 1;
    // P = U^(n) + G^(n-1) of degree deg - 1 solves  w x P - P' = -known (+ rhs).
    Poly<Scalar> P = Poly<Scalar>::Zero(std::max<Eigen::Index>(deg, 1));
    for (Eigen::Index k = deg; k >= 1; --k) {
      const Scalar upper = (k + 1 < P.size()) ? Scalar(k + 1) * P[k + 1] : Scalar(0);
      P[k - 1] = (-known[k] + upper) / g.w;
    }
    const Scalar slope0 = (P.size() > 1) ? P[1] : Scalar(0);
    const Scalar constant = known[0] - slope0;
    if (n % 2 == 0) {
      Scalar lam = constant;
      if (n == 2)
        lam -= g.beta * g.beta - Scalar(0.25);
      t.lambda.push_back(lam);
    }
    t.U.push_back(parity_part(P, 1));
    t.G.push_back(parity_part(P, 0));

    const Poly<Scalar> r = detail::order_residual(vs, t, g.beta, n);
    const Scalar rmax = r.cwiseAbs().maxCoeff();
    t.residual.push_back(rmax);
    if (!(rmax <= tolerance))
      throw SolverError(SolverError::Kind::HierarchyInconsistency,
                        "hierarchy inconsistency at order " + std::to_string(n) +
                          ": residual " + std::to_string(static_cast<double>(rmax)));
  }
  return t;
}

} // namespace pslet
