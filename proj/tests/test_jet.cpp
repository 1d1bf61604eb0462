#include <doctest.h>

#include "pslet/jet.hpp"

using namespace pslet;

namespace {

BoundPotential bound(const char* text, ParamMap p = {})
{
  return bind_params(parse_potential(text), p);
}

void check_coeffs(const Jet<double>& j, std::initializer_list<double> expected, double tol = 1e-12)
{
  REQUIRE(j.order() + 1 == static_cast<int>(expected.size()));
  int k = 0;
  for (double e : expected) {
    CAPTURE(k);
    CHECK(j[k] == doctest::Approx(e).epsilon(tol));
    ++k;
  }
}

} // namespace

TEST_CASE("Taylor coefficients of elementary potentials")
{
  check_coeffs(jet_lift<double>(bound("-2/rho"), 0.25, 3), {-8, 32, -128, 512});
  check_coeffs(jet_lift<double>(bound("rho^2"), 2.0, 3), {4, 4, 1, 0});
  check_coeffs(jet_lift<double>(bound("m*g - 2/rho + g^2*rho^2/4", {{"m", 0}, {"g", 1}}), 1.0, 2),
               {-1.75, 2.5, -1.75});
}

TEST_CASE("derivative extraction")
{
  const auto j = jet_lift<double>(bound("-2/rho"), 0.25, 3);
  CHECK(derivative(j, 2) == doctest::Approx(-256));
  CHECK(derivative(j, 0) == doctest::Approx(-8));
  CHECK(derivative(j, 3) == doctest::Approx(6 * 512));
  CHECK_THROWS_AS(derivative(j, 4), std::out_of_range);
  CHECK_THROWS_AS(derivative(j, -1), std::out_of_range);
}

TEST_CASE("real powers, exp and log follow their series")
{
  // sqrt(rho) at 4: 2, 1/4, -1/64, 1/512
  check_coeffs(jet_lift<double>(bound("rho^0.5"), 4.0, 3), {2, 0.25, -1.0 / 64, 1.0 / 512});
  // 2^rho = exp(rho ln 2) at 0.5 to order 3
  const double l2 = std::log(2.0), v = std::sqrt(2.0);
  check_coeffs(jet_lift<double>(bound("2^rho"), 0.5, 3), {v, v * l2, v * l2 * l2 / 2, v * l2 * l2 * l2 / 6});
  // rho^rho at 1: 1 + x + x^2 + x^3/2
  check_coeffs(jet_lift<double>(bound("rho^rho"), 1.0, 3), {1, 1, 1, 0.5});
}

TEST_CASE("quotients and integer powers against hand values")
{
  // 1/(1+rho) at 1: 1/2, -1/4, 1/8, -1/16
  check_coeffs(jet_lift<double>(bound("1/(1 + rho)"), 1.0, 3), {0.5, -0.25, 0.125, -0.0625});
  // rho^-3 at 1: coefficients (-1)^k C(k+2, 2)
  check_coeffs(jet_lift<double>(bound("rho^-3"), 1.0, 4), {1, -3, 6, -10, 15});
  check_coeffs(jet_lift<double>(bound("(rho - 1)^3"), 1.0, 4), {0, 0, 0, 1, 0});
}

TEST_CASE("lifting a pole fails")
{
  CHECK_THROWS(jet_lift<double>(bound("1/(rho - 1)"), 1.0, 3));
}

TEST_CASE("jets work with long double")
{
  const auto j = jet_lift<long double>(bound("-2/rho"), 0.25L, 3);
  CHECK(static_cast<double>(j[3]) == doctest::Approx(512));
}
