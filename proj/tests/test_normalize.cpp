#include "ivckind/frontend.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace ivck;

namespace {

// Random input traces for the main node of `p`.
std::vector<Step> random_inputs(const Program& p, std::mt19937& rng, int len) {
  const Node& n = p.main_node();
  std::vector<Step> steps(len);
  std::uniform_int_distribution<int> num(-8, 8);
  for (auto& s : steps) {
    for (const auto& [name, ty] : n.inputs) {
      if (ty == Ty::Bool) s[name] = value_bool(rng() % 2 == 0);
      else if (ty == Ty::Int) s[name] = value_int(num(rng));
      else s[name] = value_real(Rat(num(rng), 2));
    }
  }
  return steps;
}

// Every variable of the original main node must agree step by step.
void check_equivalent(const Program& original, const Program& normalized, int traces) {
  std::mt19937 rng(12345);
  std::vector<std::string> visible;
  for (const auto& eq : original.main_node().equations) visible.push_back(eq.target);
  for (int t = 0; t < traces; ++t) {
    auto inputs = random_inputs(original, rng, 6);
    auto a = interpret(original, inputs);
    auto b = interpret(normalized, inputs);
    for (size_t i = 0; i < a.size(); ++i) {
      for (const auto& v : visible) {
        REQUIRE(a[i].count(v) == 1);
        REQUIRE(b[i].count(v) == 1);
        REQUIRE(a[i].at(v) == b[i].at(v));
      }
    }
  }
}

}  // namespace

TEST_CASE("normalize: pre of an expression is lifted to a fresh equation") {
  Program p = parse(
      "node m(x : int) returns (y : int);\n"
      "let y = pre (x + 1);\ntel;");
  Program n = normalize(p);
  const Node& main = n.main_node();
  CHECK(main.equations.size() == 2);
  // no non-variable pre operands remain
  std::function<void(const EP&)> walk = [&](const EP& e) {
    if (e->k == Expr::K::Pre) CHECK(e->args[0]->k == Expr::K::Var);
    for (const auto& a : e->args) walk(a);
  };
  for (const auto& eq : main.equations) walk(eq.rhs);
  check_equivalent(p, n, 100);
}

TEST_CASE("normalize: random-trace equivalence on lifting fixtures") {
  for (const char* src : {
           "node m(x : int) returns (y : int);\nlet y = pre (x + 1);\ntel;",
           "node m(x : int) returns (y : int);\nlet y = 0 -> pre (pre (x + x));\ntel;",
           "node m(a : bool) returns (y : bool);\nlet y = pre (a and (true -> not pre a));\ntel;",
           "node m(x : int) returns (y : int);\nvar s : int;\n"
           "let s = (0 -> pre s) + (x -> 1); y = pre (s + x);\ntel;",
       }) {
    Program p = parse(src);
    Program n = normalize(p);
    check_equivalent(p, n, 100);
  }
}

TEST_CASE("normalize: node calls are inlined") {
  Program p = oracle::load_program("filter.lus");
  Program n = normalize(p);
  CHECK(n.nodes.size() == 1);
  std::function<void(const EP&)> walk = [&](const EP& e) {
    CHECK(e->k != Expr::K::Call);
    for (const auto& a : e->args) walk(a);
  };
  for (const auto& eq : n.main_node().equations) walk(eq.rhs);

  // Hand-inlined reference version of the filter model.
  Program ref = parse(
      "node filter(x : real) returns (y : real);\n"
      "var fx, fp, fr, a, b : real; ok : bool;\n"
      "let\n"
      "  fx = x;\n"
      "  fp = 0.0 -> pre y;\n"
      "  fr = fx + fp;\n"
      "  a = fr;\n"
      "  b = if a >= 0.0 then a else -a;\n"
      "  y = b + (0.0 -> pre y);\n"
      "  ok = y >= 0.0;\n"
      "--%PROPERTY ok;\ntel;");
  std::mt19937 rng(999);
  for (int t = 0; t < 100; ++t) {
    auto inputs = random_inputs(p, rng, 6);
    auto got = interpret(n, inputs);
    auto want = interpret(ref, inputs);
    for (size_t i = 0; i < got.size(); ++i) {
      for (const char* v : {"a", "b", "y", "ok"}) REQUIRE(got[i].at(v) == want[i].at(v));
    }
  }
}

TEST_CASE("normalize: recursion is rejected") {
  CHECK_THROWS_AS(normalize(parse(
                      "node r(x : int) returns (y : int);\nlet y = r(x);\ntel;\n"
                      "node m(x : int) returns (y : int);\nlet y = r(x);\ntel;")),
                  DiagError);
}
