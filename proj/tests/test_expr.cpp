#include <doctest.h>

#include "pslet/expr.hpp"

using namespace pslet;

TEST_CASE("division by rho parses as a quotient with a negated constant")
{
  const auto spec = parse_potential("-2/rho");
  const Node& root = spec.root();
  REQUIRE(root.op == Op::Div);
  REQUIRE(root.lhs->op == Op::Neg);
  CHECK(root.lhs->lhs->op == Op::Constant);
  CHECK(root.lhs->lhs->value == 2.0);
  CHECK(root.rhs->op == Op::Variable);
  CHECK(spec.params().empty());
}

TEST_CASE("hybrid potential is a three-term sum over m and g")
{
  const auto spec = parse_potential("m*g - 2/rho + g^2*rho^2/4");
  const Node& root = spec.root();
  REQUIRE(root.op == Op::Add);
  REQUIRE(root.lhs->op == Op::Sub);
  CHECK(root.lhs->lhs->op == Op::Mul);
  CHECK(root.lhs->rhs->op == Op::Div);
  CHECK(root.rhs->op == Op::Div);
  CHECK(spec.params() == std::vector<std::string>{"m", "g"});
}

TEST_CASE("syntax errors carry the byte offset")
{
  try {
    parse_potential("2*");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(parse_potential(""), ParseError);
  CHECK_THROWS_AS(parse_potential("(rho"), ParseError);
  CHECK_THROWS_AS(parse_potential("rho $ 2"), ParseError);
  try {
    parse_potential("rho + + ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 6);
  }
}

TEST_CASE("power is right associative and binds tighter than unary minus")
{
  const auto a = parse_potential("-rho^2");
  CHECK(a.root().op == Op::Neg);
  CHECK(a.root().lhs->op == Op::Pow);
  const auto b = parse_potential("rho^2^3");
  REQUIRE(b.root().op == Op::Pow);
  CHECK(b.root().rhs->op == Op::Pow);
  const auto c = parse_potential("rho^-1");
  CHECK(c.root().rhs->op == Op::Neg);
}

TEST_CASE("printing round-trips the tree")
{
  for (const char* text : {"m*g - 2/rho + g^2*rho^2/4", "-2/rho", "(rho - 1)^2", "rho/(2*rho + 1)",
                           "-(rho - 3)", "a - (b - rho)", "rho^(1/3)", "0.1*rho^-2 + 1e-3*rho", "2^rho^2"}) {
    const auto spec = parse_potential(text);
    const auto again = parse_potential(to_string(spec));
    CAPTURE(text);
    CHECK(structurally_equal(spec.root(), again.root()));
  }
  CHECK(to_string(parse_potential("((rho))*(2)")) == "rho*2");
}

TEST_CASE("a potential without rho is rejected")
{
  CHECK_THROWS_AS(parse_potential("5"), SolverError);
  CHECK_THROWS_AS(parse_potential("g*m"), SolverError);
}

TEST_CASE("binding")
{
  const auto hybrid = parse_potential("m*g - 2/rho + g^2*rho^2/4");
  const auto bound = bind_params(hybrid, {{"m", -1.0}, {"g", 1.0}});
  CHECK(bound.param("m") == -1.0);
  CHECK(bound.param("g") == 1.0);

  try {
    bind_params(hybrid, {{"g", 1.0}});
    FAIL("expected a bind error");
  } catch (const BindError& e) {
    CHECK(std::string(e.what()).find("`m`") != std::string::npos);
  }
  CHECK_NOTHROW(bind_params(parse_potential("-2/rho"), {}));
  CHECK_THROWS_AS(bind_params(parse_potential("-2/rho"), {{"z", 1.0}}), BindError);

  std::vector<std::string> warnings;
  CHECK_NOTHROW(bind_params(parse_potential("-2/rho"), {{"z", 1.0}}, false, &warnings));
  CHECK(warnings.size() == 1);
  CHECK_THROWS_AS(bind_params(parse_potential("g*rho"), {{"g", std::nan("")}}), BindError);
}

TEST_CASE("evaluation")
{
  const auto coulomb = bind_params(parse_potential("-2/rho"), {});
  CHECK(eval(coulomb, 1.0) == -2.0);
  CHECK_THROWS_AS(eval(coulomb, 0.0), EvalError);
  CHECK_THROWS_AS(eval(coulomb, -1.0), EvalError);

  const auto hybrid = bind_params(parse_potential("m*g - 2/rho + g^2*rho^2/4"), {{"m", 0.0}, {"g", 2.0}});
  CHECK(eval(hybrid, 1.0) == doctest::Approx(-1.0).epsilon(1e-15));

  const auto pole = bind_params(parse_potential("1/(rho - 1)"), {});
  CHECK_THROWS_AS(eval(pole, 1.0), EvalError);
  const auto root = bind_params(parse_potential("rho^0.5"), {});
  CHECK(eval(root, 4.0) == doctest::Approx(2.0));
}
