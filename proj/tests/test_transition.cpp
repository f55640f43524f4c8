#include "ivckind/transition_system.hpp"
#include "oracles.hpp"
#include "unroll.hpp"

#include <doctest.h>

#include <random>

using namespace ivck;

namespace {

std::string render(const FP& f) {
  return fm_to_smt(f, [](const std::string& n, bool primed) {
    return "|" + n + (primed ? "'" : "") + "|";
  });
}

// Evaluates a conjunct between two adjacent encoding states. Trace step i
// becomes encoding state i+1; state 0 is pre-initial (init true, every other
// variable at its type default).
bool conjunct_holds(const FP& f, const Step* prev, const Step& next) {
  auto look = [&](const std::string& name, bool primed) -> Value {
    if (name == kInitVar) return value_bool(!primed && prev == nullptr);
    const Step* s = primed ? &next : prev;
    if (s && s->count(name)) return s->at(name);
    return Value{};  // type default: false / 0
  };
  return fm_eval(f, look).b;
}

}  // namespace

TEST_CASE("lowering: counter golden form") {
  TransitionSystem ts = oracle::load_ts("counter.lus");
  const Conjunct* c = ts.find_conjunct("c");
  REQUIRE(c != nullptr);
  CHECK(render(c->formula) == "(= |c'| (ite |init| 0 (+ |c| 1)))");
  CHECK(c->candidate);
  const Conjunct* init = ts.find_conjunct(kInitConjunct);
  REQUIRE(init != nullptr);
  CHECK(!init->candidate);
  CHECK(render(init->formula) == "(not |init'|)");
  REQUIRE(ts.properties.size() == 1);
  CHECK(render(ts.properties[0].second) == "(or |init| |ok|)");
  CHECK(render(ts.init_pred) == "|init|");
}

TEST_CASE("lowering: property equations and annotations are non-candidates") {
  TransitionSystem ts = oracle::load_ts("redundant_chain.lus");
  CHECK(ts.candidate_names() == std::vector<std::string>{"y", "w", "x", "z"});
  const Conjunct* u = ts.find_conjunct("u");
  REQUIRE(u != nullptr);
  CHECK(!u->candidate);
  const Conjunct* ok = ts.find_conjunct("ok");
  REQUIRE(ok != nullptr);
  CHECK(!ok->candidate);
}

TEST_CASE("lowering: interpreter traces satisfy every conjunct at depth 5") {
  std::mt19937 rng(7);
  for (const char* f : {"counter.lus", "two_phase.lus", "filter.lus", "latch.lus",
                        "redundant_chain.lus", "saturate.lus"}) {
    Program p = normalize(oracle::load_program(f));
    TransitionSystem ts = lower(p);
    const Node& n = p.main_node();
    std::vector<Step> inputs(5);
    std::uniform_int_distribution<int> num(-4, 4);
    for (auto& s : inputs) {
      for (const auto& [name, ty] : n.inputs) {
        if (ty == Ty::Bool) s[name] = value_bool(rng() % 2 == 0);
        else if (ty == Ty::Int) s[name] = value_int(num(rng));
        else s[name] = value_real(Rat(num(rng)));
      }
    }
    auto trace = interpret(p, inputs);
    for (size_t i = 0; i < trace.size(); ++i) {
      const Step* prev = i == 0 ? nullptr : &trace[i - 1];
      for (const auto& c : ts.conjuncts) {
        INFO(f << " conjunct " << c.name << " step " << i);
        CHECK(conjunct_holds(c.formula, prev, trace[i]));
      }
      // properties hold at every non-pre-initial state of these valid models
      for (const auto& [name, prop] : ts.properties) {
        auto look = [&](const std::string& vn, bool) -> Value {
          if (vn == kInitVar) return value_bool(false);
          return trace[i].at(vn);
        };
        INFO(f << " property " << name << " step " << i);
        CHECK(fm_eval(prop, look).b);
      }
    }
  }
}

TEST_CASE("restrict_ts keeps non-candidates") {
  TransitionSystem ts = oracle::load_ts("filter.lus");
  TransitionSystem empty = restrict_ts(ts, {});
  std::vector<std::string> names;
  for (const auto& c : empty.conjuncts) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"ok", kInitConjunct});
  TransitionSystem by = restrict_ts(ts, {"b", "y"});
  CHECK(by.conjuncts.size() == 4);
}

TEST_CASE("restrict_ts monotonicity: model of larger set satisfies smaller") {
  // any conjunction over A ⊆ B is implied by the conjunction over B
  TransitionSystem ts = oracle::load_ts("chain.lus");
  auto a = restrict_ts(ts, {"a"});
  auto b = restrict_ts(ts, {"a", "b", "c"});
  std::set<std::string> an, bn;
  for (const auto& c : a.conjuncts) an.insert(c.name);
  for (const auto& c : b.conjuncts) bn.insert(c.name);
  for (const auto& n : an) CHECK(bn.count(n) == 1);
}

TEST_CASE("dump_smt renders every piece") {
  TransitionSystem ts = oracle::load_ts("counter.lus");
  std::string text = dump_smt(ts);
  CHECK(text.find("|c'|") != std::string::npos);
  CHECK(text.find("conjunct c") != std::string::npos);
  CHECK(text.find(kInitConjunct) != std::string::npos);
}
