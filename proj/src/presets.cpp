#include "pslet/presets.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "pslet/errors.hpp"
#include "pslet/solver.hpp"

namespace pslet {

namespace detail {
extern const std::string_view kPublishedTablesCsv;
}

namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s)
{
  s = trim(s);
  auto slash = s.find('/');
  if (slash != std::string_view::npos)
    return parse_number(s.substr(0, slash)) / parse_number(s.substr(slash + 1));
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error("published tables: malformed number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos)
      return out;
    start = pos + 1;
  }
}

} // namespace

std::vector<TablePreset> parse_published_tables(std::string_view csv)
{
  std::vector<TablePreset> presets = {
    {"hybrid-1s-gamma", 1, 0, false, {}},
    {"hybrid-1s-gprime", 2, 0, true, {}},
    {"hybrid-2p-minus", 3, -1, true, {}},
    {"hybrid-3d-minus", 4, -2, true, {}},
  };
  bool header = true;
  for (std::string_view line : split(csv, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#')
      continue;
    if (header) {
      header = false;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 6)
      throw Error("published tables: expected 6 columns in '" + std::string(line) + "'");
    const int table = static_cast<int>(parse_number(cells[0]));
    if (table < 1 || table > 4)
      throw Error("published tables: unknown table " + std::string(cells[0]));
    PublishedRow row;
    row.label = std::string(trim(cells[1]));
    row.field = parse_number(cells[1]);
    for (int k = 0; k < 4; ++k)
      row.en[k] = parse_number(cells[2 + k]);
    presets[table - 1].rows.push_back(std::move(row));
  }
  return presets;
}

const std::vector<TablePreset>& table_presets()
{
  static const std::vector<TablePreset> presets = parse_published_tables(detail::kPublishedTablesCsv);
  return presets;
}

const TablePreset& find_preset(std::string_view name)
{
  for (const auto& p : table_presets())
    if (p.name == name)
      return p;
  std::string known;
  for (const auto& p : table_presets())
    known += (known.empty() ? "" : ", ") + p.name;
  throw UsageError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

std::vector<PresetRow> run_preset(const TablePreset& preset, int order)
{
  const PotentialSpec spec = parse_potential(kHybridPotential);
  std::vector<std::future<PresetRow>> jobs;
  for (const auto& published : preset.rows) {
    jobs.push_back(std::async(std::launch::async, [&spec, &preset, published, order] {
      PresetRow row;
      row.published = published;
      row.gamma = preset.gamma(published.field);
      try {
        const auto bound = bind_params(spec, {{"m", double(preset.m)}, {"g", row.gamma}});
        const auto sol = solve<double>(make_problem(bound, preset.m), order);
        row.energy = sol.energy;
        row.rho0 = sol.geometry.rho0;
      } catch (const Error& e) {
        row.error = e.what();
      }
      return row;
    }));
  }
  std::vector<PresetRow> rows;
  for (auto& j : jobs)
    rows.push_back(j.get());
  return rows;
}

CheckReport check_preset(const TablePreset& preset, const std::vector<PresetRow>& rows, double tolerance)
{
  CheckReport report;
  for (const auto& row : rows) {
    const std::string where = "table " + std::to_string(preset.table) + " row " + row.published.label;
    if (!row.energy) {
      report.violations.push_back(where + ": " + row.error);
      report.max_deviation = INFINITY;
      report.worst_cell = where;
      continue;
    }
    for (int k = 0; k < 4 && k < static_cast<int>(row.energy->partial_sums.size()); ++k) {
      const double computed = row.energy->partial_sums[k];
      const double dev = std::abs(computed - row.published.en[k]);
      const std::string cell = where + " EN" + std::to_string(k);
      if (dev > report.max_deviation || report.worst_cell.empty()) {
        report.max_deviation = dev;
        report.worst_cell = cell;
      }
      if (!(dev <= tolerance)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, ": computed %.7f vs printed %.7f (|dev| %.2e)", computed,
                      row.published.en[k], dev);
        report.violations.push_back(cell + buf);
      }
    }
  }
  return report;
}

} // namespace pslet
