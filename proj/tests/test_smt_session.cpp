#include "ivckind/smt_session.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace ivck;

namespace {

SolverSpec spec() { return oracle::test_config().solver; }

}  // namespace

TEST_CASE("session: sat with model, unsat after contradiction") {
  Session s(spec());
  s.declare("x", Ty::Int);
  s.declare("p", Ty::Bool);
  s.assert_text("(> x 3)");
  s.assert_text("(or p (< x 0))");
  REQUIRE(s.check() == Sat::Sat);
  Model m = s.model();
  CHECK(m.nums.at("x") > 3);
  CHECK(m.bools.at("p"));  // x>3 forces the first disjunct
  s.push();
  s.assert_text("(< x 2)");
  CHECK(s.check() == Sat::Unsat);
  s.pop();
  CHECK(s.check() == Sat::Sat);
  CHECK(s.query_count() >= 3);
}

TEST_CASE("session: real arithmetic model is exact") {
  Session s(spec());
  s.declare("r", Ty::Real);
  s.assert_text("(= (* 3.0 r) 1.0)");
  REQUIRE(s.check() == Sat::Sat);
  CHECK(s.model().nums.at("r") == Rat(1) / 3);
}

TEST_CASE("session: unsat core covers the contradiction") {
  Session s(spec());
  s.declare("x", Ty::Int);
  s.guard("a1", "(> x 5)");
  s.guard("a2", "(< x 5)");
  s.guard("a3", "(= x x)");
  REQUIRE(s.check({"a1", "a2", "a3"}) == Sat::Unsat);
  auto core = s.unsat_core();
  std::set<std::string> got(core.begin(), core.end());
  // a1 and a2 are jointly contradictory, so any sufficient subset keeps both
  CHECK(got.count("a1") == 1);
  CHECK(got.count("a2") == 1);
}

TEST_CASE("session: minimize_core yields a minimal subset") {
  Session s(spec());
  s.declare("x", Ty::Int);
  s.declare("y", Ty::Int);
  s.guard("gx", "(> x 0)");
  s.guard("gy", "(> y 0)");
  s.guard("gs", "(< (+ x y) 0)");
  s.guard("junk", "(= x x)");
  REQUIRE(s.check({"gx", "gy", "gs", "junk"}) == Sat::Unsat);
  auto m = s.minimize_core({"gx", "gy", "gs", "junk"});
  std::set<std::string> got(m.begin(), m.end());
  CHECK(got == std::set<std::string>{"gx", "gy", "gs"});

  // minimality against the power set: every proper subset is Sat
  for (size_t mask = 0; mask + 1 < (size_t(1) << m.size()); ++mask) {
    std::vector<std::string> sub;
    for (size_t i = 0; i < m.size(); ++i)
      if (mask & (size_t(1) << i)) sub.push_back(m[i]);
    CHECK(s.check(sub) == Sat::Sat);
  }
}

TEST_CASE("session: minimize_core singleton and fixed side conditions") {
  Session s(spec());
  s.declare("b", Ty::Bool);
  s.guard("gb", "b");
  s.guard("gnb", "(not b)");
  s.guard("extra", "true");
  REQUIRE(s.check({"gb", "gnb", "extra"}) == Sat::Unsat);
  // with gnb fixed, only gb is needed from the floating part
  auto m = s.minimize_core({"extra", "gb"}, {"gnb"});
  CHECK(m == std::vector<std::string>{"gb"});
}

TEST_CASE("session: minimize_core keeps later elements when interchangeable") {
  Session s(spec());
  s.declare("b", Ty::Bool);
  s.guard("g1", "b");
  s.guard("g2", "b");
  s.guard("gn", "(not b)");
  REQUIRE(s.check({"g1", "g2", "gn"}) == Sat::Unsat);
  // g1 and g2 assert the same thing; deletion order drops the earlier one
  auto m = s.minimize_core({"g1", "g2", "gn"});
  CHECK(m == std::vector<std::string>{"g2", "gn"});
}

TEST_CASE("session: spawn and handshake failures throw") {
  CHECK_THROWS_AS(Session(SolverSpec{"missing", "/nonexistent/solver"}), SessionError);
  // a process that never answers the handshake fails the capability probe
  CHECK_THROWS_AS(Session(SolverSpec{"cat", "/bin/cat"}, 1000), SessionError);
}
