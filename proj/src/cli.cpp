#include "pslet/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

#include "pslet/errors.hpp"
#include "pslet/expr.hpp"
#include "pslet/oracle.hpp"
#include "pslet/presets.hpp"
#include "pslet/solver.hpp"
#include "pslet/wavefunction.hpp"

namespace pslet::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kCheckTolerance = 1e-5;

std::string fixed(double v, int digits)
{
  if (v == 0.0)
    v = 0.0;  // no "-0.000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s(buf);
  // A value that rounds to zero prints without a sign.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos)
    s.erase(0, 1);
  return s;
}

std::string general(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_escape(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

double parse_real(const std::string& text, const std::string& what)
{
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw UsageError("malformed number '" + text + "' in " + what);
  return v;
}

std::vector<double> parse_triple(const std::string& text, const std::string& what)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_real(item, what));
  if (out.size() != 3)
    throw UsageError(what + " expects lo,hi,n");
  return out;
}

struct Common
{
  std::string potential;
  std::vector<std::string> params;
  int m = 0;
  int order = 3;
  std::string format;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format)
{
  sub->add_option("-V,--potential", c.potential, "Potential V(rho), e.g. \"m*g - 2/rho + g^2*rho^2/4\"")
    ->required();
  sub->add_option("-p,--param", c.params, "Parameter binding k=v (repeatable)");
  sub->add_option("-m", c.m, "Signed magnetic quantum number");
  sub->add_option("--order", c.order, "Truncation order K (reports EN0..EN_K)")
    ->check(CLI::PositiveNumber);
  c.format = default_format;
}

ParamMap param_map(const std::vector<std::string>& items)
{
  ParamMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("parameter binding '" + item + "' is not of the form k=v");
    const std::string key = item.substr(0, eq);
    if (out.count(key))
      throw UsageError("parameter `" + key + "` bound twice");
    out.emplace(key, parse_real(item.substr(eq + 1), "parameter `" + key + "`"));
  }
  return out;
}

/// Binds the -p values; `m` is taken from -m when the expression uses it
/// and no explicit binding was given.
BoundPotential bind_common(const PotentialSpec& spec, const Common& c, ParamMap values)
{
  if (spec.has_param("m") && !values.count("m"))
    values.emplace("m", double(c.m));
  return bind_params(spec, values, true);
}

json energy_json(const Solution<double>& s)
{
  json j;
  const auto& g = s.geometry;
  j["geometry"] = {{"rho0", g.rho0}, {"w", g.w}, {"beta", g.beta}, {"lbar", g.lbar}, {"Q", g.Q}};
  json corr;
  corr["E(-2)"] = s.energy.e_minus2;
  corr["E(-1)"] = s.energy.e_minus1;
  for (std::size_t k = 0; k < s.energy.corrections.size(); ++k)
    corr["E(" + std::to_string(k) + ")"] = s.energy.corrections[k];
  j["corrections"] = corr;
  json ps;
  for (std::size_t k = 0; k < s.energy.partial_sums.size(); ++k)
    ps["EN" + std::to_string(k)] = s.energy.partial_sums[k];
  j["partial_sums"] = ps;
  return j;
}

int cmd_compute(const Common& c, std::ostream& out, std::ostream& err)
{
  const PotentialSpec spec = parse_potential(c.potential);
  const BoundPotential bound = bind_common(spec, c, param_map(c.params));
  const auto sol = solve<double>(make_problem(bound, c.m), c.order);
  for (const auto& w : sol.geometry.warnings)
    err << "warning: " << w << '\n';

  if (c.format == "json") {
    json j;
    j["potential"] = to_string(spec);
    j["params"] = json::object();
    for (const auto& [k, v] : bound.values())
      j["params"][k] = v;
    j["m"] = c.m;
    j["l"] = std::abs(c.m);
    j["order"] = c.order;
    j.update(energy_json(sol));
    out << j.dump(2) << '\n';
    return kOk;
  }

  const auto& g = sol.geometry;
  const auto& e = sol.energy;
  if (c.format == "csv") {
    std::string header = "rho0,w,beta,lbar,Q,E(-2),E(-1)";
    std::string row = fixed(g.rho0, 12) + ',' + fixed(g.w, 12) + ',' + fixed(g.beta, 12) + ',' +
                      fixed(g.lbar, 12) + ',' + fixed(g.Q, 12) + ',' + fixed(e.e_minus2, 12) + ',' +
                      fixed(e.e_minus1, 12);
    for (std::size_t k = 0; k < e.corrections.size(); ++k) {
      header += ",E(" + std::to_string(k) + ")";
      row += ',' + fixed(e.corrections[k], 12);
    }
    for (std::size_t k = 0; k < e.partial_sums.size(); ++k) {
      header += ",EN" + std::to_string(k);
      row += ',' + fixed(e.partial_sums[k], 12);
    }
    out << header << '\n' << row << '\n';
    return kOk;
  }

  char line[160];
  out << "potential  " << to_string(spec) << '\n';
  for (const auto& [k, v] : bound.values())
    out << "  " << k << " = " << general(v) << '\n';
  std::snprintf(line, sizeof line, "m = %d, l = %d, order = %d\n", c.m, std::abs(c.m), c.order);
  out << line << "geometry\n";
  auto put = [&](const std::string& name, double v) {
    std::snprintf(line, sizeof line, "  %-6s %18s\n", name.c_str(), fixed(v, 12).c_str());
    out << line;
  };
  put("rho0", g.rho0);
  put("w", g.w);
  put("beta", g.beta);
  put("lbar", g.lbar);
  put("Q", g.Q);
  out << "corrections\n";
  put("E(-2)", e.e_minus2);
  put("E(-1)", e.e_minus1);
  for (std::size_t k = 0; k < e.corrections.size(); ++k)
    put("E(" + std::to_string(k) + ")", e.corrections[k]);
  out << "partial sums\n";
  for (std::size_t k = 0; k < e.partial_sums.size(); ++k)
    put("EN" + std::to_string(k), e.partial_sums[k]);
  return kOk;
}

int cmd_table(const std::string& name, int order, bool check, const std::string& format, std::ostream& out,
              std::ostream& err)
{
  const TablePreset& preset = find_preset(name);
  const auto rows = run_preset(preset, std::max(order, 3));
  const int cols = std::max(order, 3);

  if (format == "json") {
    json j;
    j["preset"] = preset.name;
    j["m"] = preset.m;
    j["rows"] = json::array();
    for (const auto& r : rows) {
      json jr;
      jr[preset.field_name()] = r.published.field;
      jr["gamma"] = r.gamma;
      if (r.energy) {
        jr["rho0"] = r.rho0;
        for (int k = 0; k <= cols; ++k)
          jr["EN" + std::to_string(k)] = r.energy->partial_sums[k];
      } else {
        jr["error"] = r.error;
      }
      j["rows"].push_back(jr);
    }
    out << j.dump(2) << '\n';
  } else {
    out << preset.field_name();
    for (int k = 0; k <= cols; ++k)
      out << ",EN" << k;
    out << (format == "text" ? "\n" : ",error\n");
    for (const auto& r : rows) {
      out << r.published.label;
      for (int k = 0; k <= cols; ++k)
        out << ',' << (r.energy ? fixed(r.energy->partial_sums[k], 6) : std::string());
      if (format != "text")
        out << ',' << csv_escape(r.error);
      out << '\n';
    }
  }

  bool failed = false;
  for (const auto& r : rows)
    if (!r.energy)
      failed = true;
  if (check) {
    const CheckReport rep = check_preset(preset, rows, kCheckTolerance);
    char buf[200];
    std::snprintf(buf, sizeof buf, "check %s: max |deviation| = %.3e at %s (tolerance %.0e)\n", preset.name.c_str(),
                  rep.max_deviation, rep.worst_cell.c_str(), kCheckTolerance);
    err << buf;
    for (const auto& v : rep.violations)
      err << "  exceeds tolerance: " << v << '\n';
    if (!rep.passed())
      return kCheckFailed;
  }
  return failed ? kSolver : kOk;
}

int cmd_sweep(const Common& c, const std::string& var, const std::string& range, bool oracle, std::ostream& out)
{
  const auto r = parse_triple(range, "--range");
  const double steps_d = r[2];
  if (steps_d < 2 || std::floor(steps_d) != steps_d)
    throw UsageError("--range needs an integer step count >= 2");
  const int steps = static_cast<int>(steps_d);
  const PotentialSpec spec = parse_potential(c.potential);
  if (!spec.has_param(var))
    throw UsageError("sweep variable `" + var + "` does not appear in the potential");
  ParamMap base = param_map(c.params);
  if (base.count(var))
    throw UsageError("sweep variable `" + var + "` is also bound with -p");

  struct Row
  {
    double value;
    std::optional<Solution<double>> sol;
    std::optional<double> fd;
    std::string error;
  };
  std::vector<std::future<Row>> jobs;
  for (int i = 0; i < steps; ++i) {
    const double value = r[0] + (r[1] - r[0]) * i / (steps - 1);
    jobs.push_back(std::async(std::launch::async, [&, value] {
      Row row{value, std::nullopt, std::nullopt, {}};
      try {
        ParamMap values = base;
        values[var] = value;
        const BoundPotential bound = bind_common(spec, c, values);
        row.sol = solve<double>(make_problem(bound, c.m), c.order);
        if (oracle) {
          FdGrid grid;
          grid.rho_max = std::max(10.0, 30.0 * row.sol->geometry.rho0);
          row.fd = fd_ground_energy(bound, std::abs(c.m), grid);
        }
      } catch (const Error& e) {
        row.error = e.what();
      }
      return row;
    }));
  }

  if (c.format == "json") {
    json j = json::array();
    for (auto& job : jobs) {
      Row row = job.get();
      json jr;
      jr[var] = row.value;
      if (row.sol) {
        jr.update(energy_json(*row.sol));
        if (row.fd)
          jr["fd"] = *row.fd;
      }
      if (!row.error.empty())
        jr["error"] = row.error;
      j.push_back(jr);
    }
    out << j.dump(2) << '\n';
    return kOk;
  }

  out << var << ",rho0";
  for (int k = 0; k <= c.order; ++k)
    out << ",EN" << k;
  if (oracle)
    out << ",fd";
  out << ",error\n";
  for (auto& job : jobs) {
    Row row = job.get();
    out << general(row.value) << ',' << (row.sol ? fixed(row.sol->geometry.rho0, 10) : "");
    for (int k = 0; k <= c.order; ++k)
      out << ',' << (row.sol ? fixed(row.sol->energy.partial_sums[k], 10) : "");
    if (oracle)
      out << ',' << (row.fd ? fixed(*row.fd, 10) : "");
    out << ',' << csv_escape(row.error) << '\n';
  }
  return kOk;
}

int cmd_wavefunction(const Common& c, const std::optional<std::string>& grid_text, std::ostream& out)
{
  std::vector<double> grid;
  if (grid_text) {
    const auto g = parse_triple(*grid_text, "--grid");
    if (!(g[2] >= 3) || std::floor(g[2]) != g[2] || !(g[0] > 0) || !(g[1] > g[0]))
      throw UsageError("--grid needs 0 < lo < hi and an integer n >= 3");
    const int n = static_cast<int>(g[2]);
    for (int i = 0; i < n; ++i)
      grid.push_back(g[0] + (g[1] - g[0]) * i / (n - 1));
  }
  const PotentialSpec spec = parse_potential(c.potential);
  const BoundPotential bound = bind_common(spec, c, param_map(c.params));
  const auto sol = solve<double>(make_problem(bound, c.m), c.order);
  if (grid.empty())
    grid = default_grid(sol.geometry, sol.table);
  const auto wf = synthesize_wavefunction<double>(sol.geometry, sol.table, grid);

  if (c.format == "json") {
    json j;
    j["geometry"] = {{"rho0", sol.geometry.rho0}, {"w", sol.geometry.w}, {"beta", sol.geometry.beta},
                     {"lbar", sol.geometry.lbar}, {"Q", sol.geometry.Q}};
    j["norm"] = wf.norm;
    j["rho"] = wf.rho;
    j["psi0"] = wf.psi;
    j["R"] = wf.radial;
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "rho,psi0,R\n";
  char line[128];
  for (std::size_t i = 0; i < wf.rho.size(); ++i) {
    std::snprintf(line, sizeof line, "%.10f,%.12e,%.12e\n", wf.rho[i], wf.psi[i], wf.radial[i]);
    out << line;
  }
  return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Shifted-l pseudoperturbative expansion for nodeless 2D radial states"};
  app.require_subcommand(1);

  Common compute_opts, sweep_opts, wf_opts;
  std::string preset, table_format = "csv", var, range, grid;
  int table_order = 3;
  bool check = false, oracle = false;

  auto* compute = app.add_subcommand("compute", "Energies and frame for one state");
  add_common(compute, compute_opts, "text");
  compute->add_option("--format", compute_opts.format)->check(CLI::IsMember({"text", "json", "csv"}));

  auto* table = app.add_subcommand("table", "Reproduce a published table");
  table->add_option("preset", preset, "hybrid-1s-gamma | hybrid-1s-gprime | hybrid-2p-minus | hybrid-3d-minus")
    ->required();
  table->add_option("--order", table_order)->check(CLI::PositiveNumber);
  table->add_flag("--check", check, "Compare with the embedded published values");
  table->add_option("--format", table_format)->check(CLI::IsMember({"csv", "json", "text"}));

  auto* sweep = app.add_subcommand("sweep", "Scan one parameter");
  add_common(sweep, sweep_opts, "csv");
  sweep->add_option("--var", var, "Parameter to scan")->required();
  sweep->add_option("--range", range, "lo,hi,steps")->required();
  sweep->add_flag("--oracle", oracle, "Add the finite-difference ground energy column");
  sweep->add_option("--format", sweep_opts.format)->check(CLI::IsMember({"csv", "json"}));

  auto* wave = app.add_subcommand("wavefunction", "Sample the normalized nodeless wavefunction");
  add_common(wave, wf_opts, "csv");
  auto* grid_opt = wave->add_option("--grid", grid, "lo,hi,n");
  wave->add_option("--format", wf_opts.format)->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty())
    rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compute)
      return cmd_compute(compute_opts, out, err);
    if (*table)
      return cmd_table(preset, table_order, check, table_format, out, err);
    if (*sweep)
      return cmd_sweep(sweep_opts, var, range, oracle, out);
    return cmd_wavefunction(wf_opts, grid_opt->count() ? std::optional<std::string>(grid) : std::nullopt, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const BindError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kParse;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const EvalError& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolver;
  }
}

} // namespace pslet::cli
