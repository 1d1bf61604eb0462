// Acceptance suite: one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pslet/jet.hpp"
#include "pslet/oracle.hpp"
#include "pslet/presets.hpp"
#include "pslet/solver.hpp"
#include "pslet/wavefunction.hpp"

using namespace pslet;

namespace {

struct Outcome
{
  bool pass = true;
  std::string detail;
};

ProblemInput problem(std::string_view text, int m, ParamMap p = {})
{
  const auto spec = parse_potential(text);
  if (spec.has_param("m"))
    p.emplace("m", double(m));
  return make_problem(bind_params(spec, p), m);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0)
{
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int report(int id, const char* title, double budget_s, const std::function<Outcome()>& body)
{
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.pass = false;
    o.detail += fmt("; runtime %.3f s exceeds %.1f s", secs, budget_s);
  }
  std::printf("[%s] criterion %d: %s (%s; %.3f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

Outcome coulomb_exactness()
{
  double worst_e = 0, worst_c = 0;
  for (int m = 0; m <= 5; ++m) {
    const auto s = solve<double>(problem("-2/rho", m), 3);
    worst_e = std::max(worst_e, std::abs(s.energy.total() - coulomb_exact(m)));
    for (int k = 0; k < 3; ++k)
      worst_c = std::max(worst_c, std::abs(s.energy.correction(k)));
  }
  return {worst_e <= 1e-12 && worst_c < 1e-10, fmt("max |EN3 - exact| = %.2e, max |E(k)| = %.2e", worst_e, worst_c)};
}

Outcome oscillator_exactness()
{
  double worst_e = 0, worst_c = 0;
  for (double g : {0.5, 1.0, 2.0, 5.0})
    for (int m = 0; m <= 2; ++m) {
      const auto s = solve<double>(problem("g^2*rho^2/4", m, {{"g", g}}), 3);
      worst_e = std::max(worst_e, std::abs(s.energy.total() - oscillator_exact(m, g)));
      for (int k = 0; k < 3; ++k)
        worst_c = std::max(worst_c, std::abs(s.energy.correction(k)));
    }
  return {worst_e <= 1e-12 && worst_c < 1e-10, fmt("max |EN3 - exact| = %.2e, max |E(k)| = %.2e", worst_e, worst_c)};
}

Outcome table_regression(std::initializer_list<const char*> names)
{
  Outcome o;
  double worst = 0;
  std::size_t cells = 0, bad = 0;
  for (const char* name : names) {
    const auto& preset = find_preset(name);
    const auto rows = run_preset(preset, 3);
    const auto rep = check_preset(preset, rows, 1e-5);
    cells += 4 * rows.size();
    bad += rep.violations.size();
    worst = std::max(worst, rep.max_deviation);
    for (const auto& v : rep.violations)
      std::printf("    %s\n", v.c_str());
  }
  o.pass = bad == 0;
  o.detail = std::to_string(cells - bad) + "/" + std::to_string(cells) + " cells within 1e-5, " +
             fmt("max deviation %.2e", worst);
  return o;
}

Outcome oracle_cross_validation()
{
  double worst = 0;
  for (double g : {0.5, 1.0, 2.0})
    for (int m : {0, -1}) {
      const auto in = problem(kHybridPotential, m, {{"g", g}});
      const auto s = solve<double>(in, 3);
      const FdGrid grid{1e-4, std::max(10.0, 30.0 * s.geometry.rho0), 4000};
      const double fd = fd_ground_energy(in.potential, in.l, grid);
      const double dev = std::abs(s.energy.total() - fd);
      std::printf("    g=%.1f m=%+d  EN3=%.7f  fd=%.7f  |dev|=%.2e\n", g, m, s.energy.total(), fd, dev);
      worst = std::max(worst, dev);
    }
  return {worst <= 5e-3, fmt("max |EN3 - fd| = %.2e", worst)};
}

struct RandomCase
{
  std::string label;
  ProblemInput input;
  Solution<double> solution;
};

// Polynomial plus attractive inverse power, V = c1 rho + c2 rho^2 + c3 rho^3 - a rho^-p.
std::vector<RandomCase> random_corpus(int count)
{
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> coef(0.0, 2.0), depth(0.5, 3.0);
  std::uniform_int_distribution<int> mdist(-2, 3), pdist(0, 2);
  const double powers[] = {0.5, 1.0, 1.5};
  const auto spec = parse_potential("c1*rho + c2*rho^2 + c3*rho^3 - a*rho^-p");

  std::vector<RandomCase> out;
  for (int attempt = 0; attempt < 1000 && static_cast<int>(out.size()) < count; ++attempt) {
    ParamMap p{{"c1", coef(rng)}, {"c2", coef(rng)}, {"c3", coef(rng)}, {"a", depth(rng)},
               {"p", powers[pdist(rng)]}};
    const int m = mdist(rng);
    ProblemInput in = make_problem(bind_params(spec, p), m);
    try {
      (void)solve_geometry<double>(in);
    } catch (const SolverError&) {
      continue;  // no valid frame; not part of the corpus
    }
    const std::string label = fmt("c=(%.3f,%.3f,%.3f) ", p["c1"], p["c2"], p["c3"]) +
                              fmt("a=%.3f p=%.1f m=%.0f", p["a"], p["p"], m);
    out.push_back({label, in, solve<double>(in, 3)});
  }
  return out;
}

Outcome hierarchy_consistency(const std::vector<RandomCase>& corpus)
{
  double worst_r = 0, worst_e = 0;
  for (const auto& c : corpus) {
    const auto& s = c.solution;
    for (int n = 1; n <= half_orders_for(3); ++n) {
      const auto r = detail::order_residual(s.v, s.table, s.geometry.beta, n);
      worst_r = std::max(worst_r, r.cwiseAbs().maxCoeff());
    }
    worst_e = std::max(worst_e, std::abs(s.energy.e_minus1));
  }
  return {corpus.size() == 20 && worst_r <= 1e-9 && worst_e <= 1e-10,
          std::to_string(corpus.size()) + " potentials, " +
            fmt("max residual coefficient %.2e, max |E(-1)| = %.2e", worst_r, worst_e)};
}

Outcome geometry_invariants(const std::vector<RandomCase>& corpus)
{
  double worst_bal = 0, worst_beta = 0, min_curv = INFINITY;
  bool ok = corpus.size() == 20;
  for (const auto& c : corpus) {
    const auto& g = c.solution.geometry;
    const auto jet = jet_lift<double>(c.input.potential, g.rho0, 2);
    const double balance = std::sqrt(g.rho0 * g.rho0 * g.rho0 * derivative(jet, 1) / 2);
    const double bal = std::abs(g.lbar - balance) / g.lbar;
    const double beta = std::abs(g.beta + g.w / 4);
    const double curv = 6 / std::pow(g.rho0, 4) + derivative(jet, 2) / g.Q;
    worst_bal = std::max(worst_bal, bal);
    worst_beta = std::max(worst_beta, beta);
    min_curv = std::min(min_curv, curv);
    if (!(bal <= 1e-10 && beta <= 1e-15 * std::max(1.0, g.w) && curv > 0)) {
      ok = false;
      std::printf("    violated: %s\n", c.label.c_str());
    }
  }
  return {ok, fmt("max balance residual / lbar %.2e, max |beta + w/4| %.2e, min curvature %.3g", worst_bal,
                  worst_beta, min_curv)};
}

std::vector<double> linspace(double lo, double hi, int n)
{
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

Outcome wavefunction_fidelity()
{
  Outcome o;
  {
    const auto s = solve<double>(problem("-2/rho", 0), 3);
    const auto grid = linspace(0.01, 5.0, 500);
    const auto wf = synthesize_wavefunction<double>(s.geometry, s.table, grid);
    std::vector<double> exact;
    double sq = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      exact.push_back(4 * std::sqrt(grid[i]) * std::exp(-2 * grid[i]));
      sq += (wf.psi[i] - exact[i]) * (wf.psi[i] - exact[i]);
    }
    const double rms = std::sqrt(sq / grid.size());
    const double ov = overlap<double>(grid, wf.psi, exact);
    o.pass = rms <= 1e-4 && ov >= 0.999999;
    o.detail = fmt("Coulomb RMS %.3e, overlap %.6f", rms, ov);
  }
  {
    const auto s = solve<double>(problem("g^2*rho^2/4", 0, {{"g", 1.0}}), 3);
    const auto grid = linspace(0.01, 8.0, 800);
    const auto wf = synthesize_wavefunction<double>(s.geometry, s.table, grid);
    std::vector<double> exact;
    for (double r : grid)
      exact.push_back(std::sqrt(r) * std::exp(-r * r / 4));
    const double ov = overlap<double>(grid, wf.psi, exact);
    o.pass = o.pass && ov >= 0.9999;
    o.detail += fmt("; oscillator overlap %.6f", ov);
  }
  return o;
}

} // namespace

int main()
{
  int failures = 0;
  failures += report(1, "Coulomb exactness, m = 0..5", 0.1, coulomb_exactness);
  failures += report(2, "oscillator exactness, gamma x m grid", 0.1, oscillator_exactness);
  failures += report(3, "hybrid-1s-gamma table regression", 2.0, [] { return table_regression({"hybrid-1s-gamma"}); });
  failures += report(4, "hybrid-1s-gprime, hybrid-2p-minus, hybrid-3d-minus table regression", 2.0, [] {
    return table_regression({"hybrid-1s-gprime", "hybrid-2p-minus", "hybrid-3d-minus"});
  });
  failures += report(5, "finite-difference cross-validation", 30.0, oracle_cross_validation);

  std::vector<RandomCase> corpus;
  try {
    corpus = random_corpus(20);
  } catch (const std::exception& e) {
    std::printf("    corpus construction failed: %s\n", e.what());
  }
  failures += report(6, "hierarchy self-consistency, random potentials", 0, [&] { return hierarchy_consistency(corpus); });
  failures += report(7, "wavefunction fidelity", 0, wavefunction_fidelity);
  failures += report(8, "geometry invariants, random potentials", 0, [&] { return geometry_invariants(corpus); });

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
