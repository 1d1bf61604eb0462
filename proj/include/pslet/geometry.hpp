#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pslet/errors.hpp"
#include "pslet/expr.hpp"
#include "pslet/jet.hpp"

namespace pslet {

/// One nodeless state: the potential (with signed m already bound where the
/// expression uses it), the centrifugal quantum number l = |m|.
struct ProblemInput
{
  BoundPotential potential;
  int m = 0;
  int l = 0;
  int n_rho = 0;
};

inline ProblemInput make_problem(BoundPotential potential, int m)
{
  return ProblemInput{std::move(potential), m, std::abs(m), 0};
}

struct FrameOptions
{
  double rho_min = 1e-4;
  double rho_max = 1e4;
  int scan_points = 4000;
  double root_tol = 1e-12;
};

/// The expansion frame. x = sqrt(lbar) (rho - rho0) / rho0, y = x / sqrt(lbar).
template <typename Scalar>
struct Geometry
{
  Scalar rho0;
  Scalar w;
  Scalar beta;
  Scalar lbar;
  Scalar Q;
  int l = 0;
  int n_rho = 0;
  /// |lbar - sqrt(rho0^3 V'(rho0) / 2)|
  Scalar balance_residual = Scalar(0);
  /// d^2 E^(-2) / d rho0^2 at fixed Q.
  Scalar curvature = Scalar(0);
  std::vector<std::string> warnings;

  Scalar x_of(Scalar rho) const
  {
    using std::sqrt;
    return sqrt(lbar) * (rho - rho0) / rho0;
  }
  Scalar rho_of(Scalar x) const
  {
    using std::sqrt;
    return rho0 * (Scalar(1) + x / sqrt(lbar));
  }
  Scalar y_of(Scalar rho) const { return (rho - rho0) / rho0; }
};

namespace detail {

template <typename Scalar>
struct FrameSample
{
  Scalar value;         // F(rho)
  Scalar slope;         // F'(rho)
  Scalar w;
  Scalar balance;       // sqrt(rho^3 V' / 2)
};

/// F(rho) = sqrt(rho^3 V'/2) - l - (n_rho + 1/2) w(rho) / 2, the balance
/// condition with the shift eliminated. Empty where V' <= 0 or the frequency
/// radicand is non-positive. `radicand_failed` is set when V' > 0 and the
/// balance would admit lbar >= l but the frequency is imaginary.
template <typename Scalar>
std::optional<FrameSample<Scalar>> frame_function(const ProblemInput& in,
                                                  Scalar rho,
                                                  bool* radicand_failed = nullptr)
{
  using std::isfinite;
  using std::sqrt;
  Jet<Scalar> jet = jet_lift<Scalar>(in.potential, rho, 3);
  const Scalar v1 = jet[1];
  const Scalar v2 = Scalar(2) * jet[2];
  const Scalar v3 = Scalar(6) * jet[3];
  if (!(v1 > Scalar(0)))
    return std::nullopt;
  const Scalar b2 = rho * rho * rho * v1 / Scalar(2);
  const Scalar balance = sqrt(b2);
  const Scalar ratio = rho * v2 / v1;
  const Scalar radicand = Scalar(3) + ratio;
  if (!(radicand > Scalar(0))) {
    if (radicand_failed && balance >= Scalar(in.l))
      *radicand_failed = true;
    return std::nullopt;
  }
  const Scalar root = sqrt(radicand);
  const Scalar w = Scalar(2) * root;
  const Scalar k = Scalar(in.n_rho) + Scalar(0.5);
  const Scalar value = balance - Scalar(in.l) - k * w / Scalar(2);
  const Scalar dbalance = (Scalar(3) * rho * rho * v1 + rho * rho * rho * v2) / (Scalar(4) * balance);
  const Scalar dratio = (v2 + rho * v3) / v1 - rho * v2 * v2 / (v1 * v1);
  const Scalar dw = dratio / root;
  const Scalar slope = dbalance - k * dw / Scalar(2);
  if (!isfinite(value) || !isfinite(slope))
    return std::nullopt;
  return FrameSample<Scalar>{value, slope, w, balance};
}

} // namespace detail

/// Solves for the expansion point rho0 minimizing E^(-2), the frequency w,
/// the shift beta = -(n_rho + 1/2) w / 2 and lbar = l - beta.
///
/// Sign changes of F are bracketed on a logarithmic scan, bisected and then
/// Newton-polished. With several admissible roots the one giving the lowest
/// leading energy lbar^2 E^(-2) wins and a warning is recorded.
template <typename Scalar = double>
Geometry<Scalar> solve_geometry(const ProblemInput& in, const FrameOptions& opt = {})
{
  using std::abs;
  using std::exp;
  using std::log;
  using std::sqrt;

  if (in.n_rho != 0)
    throw SolverError(SolverError::Kind::NoStableFrame, "only nodeless states (n_rho = 0) are supported");
  if (in.l < 0)
    throw SolverError(SolverError::Kind::NoStableFrame, "l must be non-negative");

  const int n = std::max(opt.scan_points, 16);
  const Scalar lo = log(Scalar(opt.rho_min));
  const Scalar hi = log(Scalar(opt.rho_max));

  bool radicand_failed = false;
  std::vector<Scalar> rhos(n);
  std::vector<std::optional<detail::FrameSample<Scalar>>> samples(n);
  for (int i = 0; i < n; ++i) {
    rhos[i] = exp(lo + (hi - lo) * Scalar(i) / Scalar(n - 1));
    try {
      samples[i] = detail::frame_function<Scalar>(in, rhos[i], &radicand_failed);
    } catch (const EvalError&) {
      samples[i].reset();
    }
  }

  auto F = [&](Scalar r) -> std::optional<detail::FrameSample<Scalar>> {
    try {
      return detail::frame_function<Scalar>(in, r);
    } catch (const EvalError&) {
      return std::nullopt;
    }
  };

  std::vector<Scalar> roots;
  for (int i = 0; i + 1 < n; ++i) {
    if (!samples[i] || !samples[i + 1])
      continue;
    const Scalar fa = samples[i]->value;
    const Scalar fb = samples[i + 1]->value;
    if (fa == Scalar(0)) {
      roots.push_back(rhos[i]);
      continue;
    }
    if ((fa < Scalar(0)) == (fb < Scalar(0)) || fb == Scalar(0))
      continue;

    Scalar a = rhos[i], b = rhos[i + 1];
    Scalar fa_ = fa;
    bool ok = true;
    for (int it = 0; it < 200; ++it) {
      const Scalar mid = (a + b) / Scalar(2);
      auto fm = F(mid);
      if (!fm) {
        ok = false;
        break;
      }
      if (abs(fm->value) <= Scalar(opt.root_tol) || b - a <= std::numeric_limits<Scalar>::epsilon() * mid) {
        a = b = mid;
        break;
      }
      if ((fm->value < Scalar(0)) == (fa_ < Scalar(0))) {
        a = mid;
        fa_ = fm->value;
      } else {
        b = mid;
      }
    }
    if (!ok)
      continue;
    Scalar r = (a + b) / Scalar(2);
    const Scalar br_lo = rhos[i], br_hi = rhos[i + 1];
    for (int it = 0; it < 8; ++it) {
      auto s = F(r);
      if (!s || s->slope == Scalar(0))
        break;
      const Scalar next = r - s->value / s->slope;
      auto sn = F(next);
      if (!sn || next < br_lo || next > br_hi || abs(sn->value) >= abs(s->value))
        break;
      r = next;
    }
    roots.push_back(r);
  }

  std::vector<Geometry<Scalar>> frames;
  std::string last_failure;
  SolverError::Kind last_kind = SolverError::Kind::NoStableFrame;
  for (Scalar r : roots) {
    auto s = F(r);
    if (!s) {
      last_failure = "frequency undefined at candidate rho0";
      last_kind = SolverError::Kind::FrequencyUndefined;
      continue;
    }
    Jet<Scalar> jet = jet_lift<Scalar>(in.potential, r, 2);
    Geometry<Scalar> g;
    g.rho0 = r;
    g.w = s->w;
    g.beta = -(Scalar(in.n_rho) + Scalar(0.5)) * g.w / Scalar(2);
    g.lbar = Scalar(in.l) - g.beta;
    g.Q = g.lbar * g.lbar;
    g.l = in.l;
    g.n_rho = in.n_rho;
    g.balance_residual = abs(g.lbar - s->balance);
    const Scalar r2 = r * r;
    g.curvature = Scalar(6) / (r2 * r2) + Scalar(2) * jet[2] / g.Q;
    if (!(g.lbar > Scalar(0))) {
      last_failure = "shifted quantum number is not positive";
      continue;
    }
    if (!(g.curvature > Scalar(0))) {
      last_failure = "not a minimum: d^2 E^(-2)/d rho0^2 <= 0";
      last_kind = SolverError::Kind::NotAMinimum;
      continue;
    }
    if (g.balance_residual > Scalar(1e-10) * g.lbar) {
      last_failure = "no stable frame: balance residual too large";
      continue;
    }
    frames.push_back(std::move(g));
  }

  if (frames.empty()) {
    if (!last_failure.empty())
      throw SolverError(last_kind, last_failure);
    if (radicand_failed)
      throw SolverError(SolverError::Kind::FrequencyUndefined,
                        "frequency undefined: 3 + rho V''/V' <= 0 where a frame would be needed");
    throw SolverError(SolverError::Kind::NoStableFrame,
                      "no stable frame: no sign change of the balance condition in the scan range");
  }

  auto leading = [&](const Geometry<Scalar>& g) {
    const Scalar v = eval<Scalar>(in.potential, g.rho0);
    return g.Q / (g.rho0 * g.rho0) + v;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < frames.size(); ++i)
    if (leading(frames[i]) < leading(frames[best]))
      best = i;
  Geometry<Scalar> out = frames[best];
  if (frames.size() > 1)
    out.warnings.push_back(std::to_string(frames.size()) +
                           " admissible expansion points found; kept the lowest leading energy");
  return out;
}

} // namespace pslet
