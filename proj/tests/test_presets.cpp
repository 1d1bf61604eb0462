#include <doctest.h>

#include <cmath>

#include "pslet/presets.hpp"

using namespace pslet;

namespace {

const PresetRow& row_at(const std::vector<PresetRow>& rows, double field)
{
  for (const auto& r : rows)
    if (std::abs(r.published.field - field) < 1e-12)
      return r;
  throw std::runtime_error("row not found");
}

} // namespace

TEST_CASE("embedded tables")
{
  const auto& presets = table_presets();
  REQUIRE(presets.size() == 4);
  CHECK(find_preset("hybrid-1s-gamma").rows.size() == 16);
  CHECK(find_preset("hybrid-1s-gamma").m == 0);
  CHECK(find_preset("hybrid-2p-minus").m == -1);
  CHECK(find_preset("hybrid-3d-minus").m == -2);
  CHECK(find_preset("hybrid-1s-gprime").compactified);
  CHECK_THROWS_AS(find_preset("nope"), UsageError);

  const auto& t3 = find_preset("hybrid-2p-minus");
  CHECK(t3.rows.front().en[0] == doctest::Approx(-4.0 / 9));
  CHECK(find_preset("hybrid-3d-minus").rows.front().en[3] == doctest::Approx(-4.0 / 25));
  CHECK(t3.gamma(0.5) == doctest::Approx(1.0));
}

TEST_CASE("table parser")
{
  const auto p = parse_published_tables("# comment\n"
                                    "table,field,EN0,EN1,EN2,EN3\n"
                                    "1,0,-4,-4,-4,-4\n"
                                    "3,0.5,-4/9,1,2,3\n");
  REQUIRE(p.size() == 4);
  CHECK(p[0].rows.size() == 1);
  CHECK(p[2].rows[0].en[0] == doctest::Approx(-4.0 / 9));
  CHECK(p[2].rows[0].label == "0.5");
  CHECK_THROWS(parse_published_tables("table,field,EN0,EN1,EN2,EN3\n1,0,-4,-4\n"));
  CHECK_THROWS(parse_published_tables("table,field,EN0,EN1,EN2,EN3\n9,0,1,2,3,4\n"));
}

TEST_CASE("published rows")
{
  {
    const auto rows = run_preset(find_preset("hybrid-1s-gamma"));
    CHECK(std::abs(row_at(rows, 10).energy->partial_sums[3] - 0.494518) < 1e-5);
    CHECK(row_at(rows, 0).energy->partial_sums[3] == doctest::Approx(-4.0));
  }
  {
    const auto rows = run_preset(find_preset("hybrid-2p-minus"));
    CHECK(std::abs(row_at(rows, 0.5).energy->partial_sums[3] + 0.409164) < 1e-5);
  }
  {
    const auto rows = run_preset(find_preset("hybrid-3d-minus"));
    CHECK(std::abs(row_at(rows, 0.8).energy->partial_sums[3] - 2.073635) < 1e-5);
  }
}

TEST_CASE("check report")
{
  const auto& t = find_preset("hybrid-1s-gamma");
  auto rows = run_preset(t);
  CHECK(check_preset(t, rows, 1e-5).passed());
  rows[3].energy->partial_sums[2] += 1e-3;
  const auto rep = check_preset(t, rows, 1e-5);
  CHECK_FALSE(rep.passed());
  CHECK(rep.violations.size() == 1);
  CHECK(rep.max_deviation == doctest::Approx(1e-3).epsilon(1e-2));
  CHECK(rep.worst_cell.find("EN2") != std::string::npos);
}
