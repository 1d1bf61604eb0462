#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pslet/energy.hpp"

namespace pslet {

/// Expression of the hybrid Coulomb + oscillator potential in a magnetic
/// field, with signed magnetic quantum number `m` and field strength `g`.
inline constexpr std::string_view kHybridPotential = "m*g - 2/rho + g^2*rho^2/4";

/// One published row: the field value as printed and EN0..EN3.
struct PublishedRow
{
  std::string label;
  double field = 0.0;
  std::array<double, 4> en{};
};

struct TablePreset
{
  std::string name;
  int table = 0;
  int m = 0;
  /// Rows are indexed by gamma' = gamma / (1 + gamma) rather than gamma.
  bool compactified = false;
  std::vector<PublishedRow> rows;

  std::string field_name() const { return compactified ? "gamma_prime" : "gamma"; }
  double gamma(double field) const { return compactified ? field / (1.0 - field) : field; }
};

/// The four presets, built from the embedded data file.
const std::vector<TablePreset>& table_presets();
/// Throws UsageError for an unknown name.
const TablePreset& find_preset(std::string_view name);

/// Parses the embedded CSV format (exposed for testing). Values may be
/// written as fractions a/b.
std::vector<TablePreset> parse_published_tables(std::string_view csv);

struct PresetRow
{
  PublishedRow published;
  double gamma = 0.0;
  std::optional<EnergyBreakdown<double>> energy;
  double rho0 = 0.0;
  std::string error;
};

/// Solves every row of a preset (rows run concurrently; results keep the
/// preset order).
std::vector<PresetRow> run_preset(const TablePreset& preset, int order = 3);

struct CheckReport
{
  double max_deviation = 0.0;
  std::string worst_cell;
  /// Cells above tolerance, as "table T row R ENk: computed vs printed".
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

CheckReport check_preset(const TablePreset& preset, const std::vector<PresetRow>& rows, double tolerance);

} // namespace pslet
