#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "rectsub/expr.hpp"

using namespace rectsub;

TEST_CASE("unary minus binds looser than power") {
  const Expression e = testing::ex("-x1^2", {"x1"});
  REQUIRE(e.root().op == Op::Negate);
  CHECK(e.root().args[0]->op == Op::Power);
  const double at[1] = {3.0};
  CHECK(e.evaluate(std::span<const double>(at)) == doctest::Approx(-9.0));
}

TEST_CASE("power is right associative") {
  const Expression e = testing::ex("2^3^2", {});
  CHECK(e.evaluate(std::span<const double>()) == doctest::Approx(512.0));
}

TEST_CASE("composite functions") {
  const Expression e = testing::ex("tanh(asinh(s))", {"s"});
  const double at[1] = {1.0};
  CHECK(e.evaluate(std::span<const double>(at)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  const Expression p = testing::ex("pow(x, 3) + pi", {"x"});
  const double two[1] = {2.0};
  CHECK(p.evaluate(std::span<const double>(two)) == doctest::Approx(8.0 + M_PI));
}

TEST_CASE("parse errors carry positions and expectations") {
  try {
    testing::ex("x1 + * 2", {"x1"});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 6);
    CHECK_FALSE(e.expected().empty());
  }
  try {
    testing::ex("sin(x1)\n + y", {"x1"});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 4);
  }
  CHECK_THROWS_AS(testing::ex("foo(x1)", {"x1"}), ParseError);
  CHECK_THROWS_AS(testing::ex("sin(x1, x1)", {"x1"}), ParseError);
  CHECK_THROWS_AS(testing::ex("(x1", {"x1"}), ParseError);
  CHECK_THROWS_AS(testing::ex("x1 $", {"x1"}), ParseError);
}

TEST_CASE("remap rewrites variables") {
  const Expression e = testing::ex("a*b^2", {"a", "b"});
  const int idx[2] = {2, 0};
  const Expression r = e.remap(idx, {"x", "y", "z"});
  const double at[3] = {2.0, 5.0, 3.0};
  CHECK(r.evaluate(std::span<const double>(at)) == doctest::Approx(3.0 * 4.0));
  CHECK(r.uses_variable(2));
  CHECK_FALSE(r.uses_variable(1));
}

namespace {

NodePtr random_node(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 7);
  const int k = depth == 0 ? pick(rng) % 2 : pick(rng);
  switch (k) {
    case 0: return make_number(std::uniform_int_distribution<int>(0, 40)(rng) * 0.25);
    case 1: return make_variable(std::uniform_int_distribution<int>(0, 2)(rng));
    case 2: return make_negate(random_node(rng, depth - 1));
    case 3: return make_binary(Op::Add, random_node(rng, depth - 1), random_node(rng, depth - 1));
    case 4: return make_binary(Op::Subtract, random_node(rng, depth - 1), random_node(rng, depth - 1));
    case 5: return make_binary(Op::Multiply, random_node(rng, depth - 1), random_node(rng, depth - 1));
    case 6: return make_binary(Op::Divide, random_node(rng, depth - 1), random_node(rng, depth - 1));
    default: {
      if (pick(rng) % 2) return make_binary(Op::Power, random_node(rng, depth - 1), random_node(rng, depth - 1));
      const auto f = static_cast<Function>(std::uniform_int_distribution<int>(0, 12)(rng));
      return make_call(f, {random_node(rng, depth - 1)});
    }
  }
}

}  // namespace

TEST_CASE("printing round-trips through the parser") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> vars{"a", "b", "c"};
  for (int i = 0; i < 500; ++i) {
    const NodePtr n = random_node(rng, 5);
    const std::string text = to_string(*n, vars);
    INFO(text);
    const Expression back = Expression::parse(text, vars);
    CHECK(structurally_equal(*n, back.root()));
  }
}
