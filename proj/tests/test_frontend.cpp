#include "ivckind/frontend.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace ivck;

namespace {

Program parse_node(const std::string& body) {
  return parse("node m() returns (ok : bool);\n" + body);
}

}  // namespace

TEST_CASE("parser accepts the corpus") {
  for (const char* f : {"filter.lus", "counter.lus", "two_phase.lus", "redundant_chain.lus",
                        "toy_ab.lus", "latch.lus", "two_props.lus"}) {
    CHECK_NOTHROW(parse(oracle::read_file(oracle::corpus_path(f))));
  }
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse("node m( returns (ok : bool); let tel"), DiagError);
  try {
    parse("node m() returns (ok : bool);\nlet\n  ok = ;\ntel;");
    FAIL("expected a diagnostic");
  } catch (const DiagError& e) {
    CHECK(e.diag.kind == DiagKind::ParseError);
    CHECK(e.diag.line == 3);
  }
}

TEST_CASE("reserved tilde names are rejected") {
  CHECK_THROWS_AS(parse_node("var a~1 : int;\nlet ok = true; tel;"), DiagError);
}

TEST_CASE("type errors") {
  // nonlinear multiplication
  CHECK_THROWS_AS(parse_node("var a, b, c : int;\nlet a = 1; b = 2; c = a * b; ok = true;\ntel;"),
                  DiagError);
  // non-constant divisor
  CHECK_THROWS_AS(parse_node("var a, b : int;\nlet a = 4; b = a div a; ok = true;\ntel;"),
                  DiagError);
  // literal zero divisor
  CHECK_THROWS_AS(parse_node("var a : int;\nlet a = 4 mod 0; ok = true;\ntel;"), DiagError);
  // mod on reals
  CHECK_THROWS_AS(parse_node("var r : real;\nlet r = 1.0 mod 2.0; ok = true;\ntel;"), DiagError);
  // property must be bool
  CHECK_THROWS_AS(parse_node("var c : int;\nlet c = 0; ok = true;\n--%PROPERTY c;\ntel;"),
                  DiagError);
  // instantaneous cycle
  CHECK_THROWS_AS(parse_node("var a, b : bool;\nlet a = b; b = a; ok = true;\ntel;"), DiagError);
  // cycle through pre is fine
  CHECK_NOTHROW(parse_node("var a, b : bool;\nlet a = false -> pre b; b = a; ok = b;\ntel;"));
  // duplicate definition
  CHECK_THROWS_AS(parse_node("var a : bool;\nlet a = true; a = false; ok = a;\ntel;"), DiagError);
  // undefined local
  CHECK_THROWS_AS(parse_node("var a : bool;\nlet ok = a;\ntel;"), DiagError);
  // unresolved identifier
  CHECK_THROWS_AS(parse_node("let ok = ghost;\ntel;"), DiagError);
}

TEST_CASE("pretty-print round trip") {
  for (const char* f : {"filter.lus", "saturate.lus", "bounded.lus", "parity.lus"}) {
    Program p1 = parse(oracle::read_file(oracle::corpus_path(f)));
    std::string text = pretty_print(p1);
    Program p2 = parse(text);
    CHECK(pretty_print(p2) == text);
  }
}

TEST_CASE("backward slice: hand fixpoint") {
  // chain a -> b -> c, plus unrelated d
  Program p = parse_node(
      "var a, b, c, d : int;\n"
      "let a = 1; b = a; c = 0 -> pre b; d = 7; ok = c >= 0;\ntel;");
  auto s = slice_backward(p, "c");
  CHECK(s == std::set<std::string>{"a", "b", "c"});
  auto s2 = slice_backward(p, "ok");
  CHECK(s2 == std::set<std::string>{"a", "b", "c", "ok"});
}

TEST_CASE("ivc annotation resolution") {
  Program p = parse_node(
      "var a, b : int;\nlet a = 1; b = 2; ok = true;\n--%IVC a, b;\ntel;");
  CHECK(resolve_ivc_annotations(p) == std::set<std::string>{"a", "b"});
  Program q = parse_node("var a : int;\nlet a = 1; ok = true;\ntel;");
  CHECK(resolve_ivc_annotations(q) == std::set<std::string>{"a", "ok"});
  CHECK_THROWS_AS(
      parse_node("var a : int;\nlet a = 1; ok = true;\n--%IVC ghost;\ntel;"),
      DiagError);
}

TEST_CASE("interpreter: counter trace") {
  Program p = parse(oracle::read_file(oracle::corpus_path("counter.lus")));
  auto trace = interpret(p, std::vector<Step>(5));
  for (int i = 0; i < 5; ++i) {
    CHECK(trace[i].at("c") == value_int(i));
    CHECK(trace[i].at("ok").b);
  }
}

TEST_CASE("interpreter: euclidean div and mod") {
  Program p = parse_node(
      "var q, r : int;\nlet q = (-7) div 2; r = (-7) mod 2; ok = true;\ntel;");
  auto t = interpret(p, std::vector<Step>(1));
  CHECK(t[0].at("q") == value_int(-4));
  CHECK(t[0].at("r") == value_int(1));
}
