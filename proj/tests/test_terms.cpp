#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "loopalg/core.hpp"
#include "loopalg/properties.hpp"
#include "loopalg/terms.hpp"
#include "oracles.hpp"

using namespace loopalg;

namespace {

Term random_term(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> leaf(0, 3);
  std::uniform_int_distribution<int> node(0, 4);
  if (depth == 0 || leaf(rng) == 0) {
    int pick = leaf(rng);
    if (pick == 3) return t_const();
    return t_var("xyz"[pick % 3]);
  }
  switch (node(rng)) {
    case 0: return t_mul(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 1: return t_inv(random_term(rng, depth - 1));
    case 2: return t_ldiv(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 3: return t_rdiv(random_term(rng, depth - 1), random_term(rng, depth - 1));
    default: return t_mul(random_term(rng, depth - 1), random_term(rng, depth - 1));
  }
}

std::vector<LoopTable> small_corpus() {
  std::vector<LoopTable> out{cyclic_group(6), s3(), chein_double(s3())};
  for (int n = 1; n <= 5; ++n)
    for (const auto& cells : oracles::naive_reduced_loops(n))
      out.push_back(validate_loop(cells, n));
  return out;
}

}  // namespace

TEST_CASE("parser handles the documented grammar") {
  Equation eq = parse_identity("x*(y \\ z) = (x/y)^-1 * e");
  CHECK(print_equation(eq) == "(x*(y\\z)) = ((x/y)^-1*e)");
  CHECK(eq.variables == "xyz");

  // Left associativity: a*b*c = (a*b)*c.
  CHECK(print_equation(parse_identity("x*y*z = x")) == "((x*y)*z) = x");
  // Repeated inversion.
  CHECK(print_equation(parse_identity("x^-1^-1 = x")) == "x^-1^-1 = x");
}

TEST_CASE("parser reports positioned errors") {
  auto fails = [](const std::string& s) {
    try {
      parse_identity(s);
      return std::string();
    } catch (const parse_error& e) {
      return std::string(e.what());
    }
  };
  CHECK(fails("x*y").find("expected '='") != std::string::npos);
  CHECK(fails("x = y = z").find("duplicate '='") != std::string::npos);
  CHECK(fails("x = y z").find("trailing input") != std::string::npos);
  CHECK(fails("(x*y = z").find("expected ')'") != std::string::npos);
  CHECK(fails("A = x").find("unexpected character") != std::string::npos);
  CHECK(fails("x = ").find("unexpected end") != std::string::npos);
  CHECK(fails("x*y").find("position") != std::string::npos);
}

TEST_CASE("1000 random equations survive print -> parse") {
  std::mt19937 rng(987654321u);
  for (int i = 0; i < 1000; ++i) {
    Equation eq = make_equation(random_term(rng, 4), random_term(rng, 4));
    Equation back = parse_identity(print_equation(eq));
    CHECK(back == eq);
  }
}

TEST_CASE("builtin identities reparse to themselves") {
  for (const auto& ne : builtin_identities()) {
    Equation back = parse_identity(print_equation(ne.equation));
    CHECK(back == ne.equation);
    CHECK(parse_identity(ne.text) == ne.equation);
  }
  CHECK(find_builtin("moufang") != nullptr);
  CHECK(find_builtin("nonsense") == nullptr);
}

TEST_CASE("evaluation agrees with direct table arithmetic") {
  LoopTable L = s3();
  Equation eq = parse_identity("x*(y\\x) = (x/y)*e");
  Assignment asg;
  asg.set('x', 4);
  asg.set('y', 2);
  CHECK(eval_term(L, eq.lhs, asg) == L.mul(4, L.left_div(2, 4)));
  CHECK(eval_term(L, eq.rhs, asg) == L.right_div(2, 4));

  Assignment empty;
  CHECK_THROWS_WITH(eval_term(L, eq.lhs, empty), "unbound variable 'x'");
}

TEST_CASE("holds(moufang) agrees with is_moufang everywhere") {
  const Equation& m = find_builtin("moufang")->equation;
  for (const LoopTable& L : small_corpus())
    CHECK(holds(L, m) == is_moufang(L));
}

TEST_CASE("the four Moufang identities agree as properties") {
  const Equation& m1 = find_builtin("moufang")->equation;
  const Equation& m2 = find_builtin("moufang_right")->equation;
  const Equation& m3 = find_builtin("moufang_middle1")->equation;
  const Equation& m4 = find_builtin("moufang_middle2")->equation;
  for (const LoopTable& L : small_corpus()) {
    bool h = holds(L, m1);
    CHECK(holds(L, m2) == h);
    CHECK(holds(L, m3) == h);
    CHECK(holds(L, m4) == h);
  }
}

TEST_CASE("m4 identity agrees with is_m4 on power-associative loops") {
  const Equation& m4 = find_builtin("m4")->equation;
  for (const LoopTable& L : small_corpus())
    if (is_power_associative(L)) CHECK(holds(L, m4) == is_m4(L));
}

TEST_CASE("counterexamples re-check as violations") {
  const Equation& assoc = find_builtin("associative")->equation;
  for (const LoopTable& L : small_corpus()) {
    auto ce = counterexample(L, assoc);
    if (!ce) continue;
    CHECK(eval_term(L, assoc.lhs, *ce) != eval_term(L, assoc.rhs, *ce));
  }
}

TEST_CASE("identities with inverses are inapplicable on non-IP loops") {
  // A loop where some element has no two-sided inverse.
  LoopTable L5 = validate_loop({0, 1, 2, 3, 4,
                                1, 0, 3, 4, 2,
                                2, 3, 4, 0, 1,
                                3, 4, 1, 2, 0,
                                4, 2, 0, 1, 3}, 5);
  REQUIRE_FALSE(L5.has_total_inverses());
  IdentityCheck res = check_identity(L5, find_builtin("ip_left")->equation);
  CHECK_FALSE(res.applicable);
  CHECK_FALSE(res.holds);
  CHECK(res.inapplicable_at.has_value());
}

TEST_CASE("the expanded conjugation equation parses and evaluates") {
  const NamedEquation* c8 = find_builtin("cor8_expanded");
  REQUIRE(c8 != nullptr);
  // Holds on every group (diassociative A-loops), here S3 and Z8.
  CHECK(holds(s3(), c8->equation));
  CHECK(holds(cyclic_group(8), c8->equation));
  Assignment asg;
  asg.set('x', 3);
  asg.set('y', 5);
  asg.set('z', 2);
  CHECK(eval_term(s3(), c8->equation.lhs, asg) == 5);
}
