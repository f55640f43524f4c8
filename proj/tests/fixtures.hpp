// Hand-built transition systems used by both the unit tests and the
// acceptance gate.
#pragma once

#include "ivckind/transition_system.hpp"

namespace ivck::fixture {

inline FP ivar(const std::string& n, bool primed = false) {
  return fm_var(n, primed, Ty::Int);
}

inline FP ge0(const std::string& n) { return fm_bin(Expr::Op::Ge, ivar(n), fm_int(0)); }

inline Conjunct init_conjunct() {
  return {kInitConjunct, fm_un(Expr::Op::Not, fm_var(kInitVar, true, Ty::Bool)), false};
}

// s' = ite(init, 0, 1 - s) with P = init ∨ s ≤ 1: the classic 2-but-not-1
// inductive two-phase oscillator, with the property directly over s.
inline TransitionSystem two_phase() {
  TransitionSystem ts;
  ts.state_vars = {{kInitVar, Ty::Bool}, {"s", Ty::Int}};
  ts.init_pred = fm_var(kInitVar, false, Ty::Bool);
  ts.conjuncts = {
      {"es",
       fm_bin(Expr::Op::Eq, ivar("s", true),
              fm_ite(fm_var(kInitVar, false, Ty::Bool), fm_int(0),
                     fm_bin(Expr::Op::Sub, fm_int(1), ivar("s")))),
       true},
      init_conjunct(),
  };
  ts.properties.emplace_back(
      "P", fm_bin(Expr::Op::Or, fm_var(kInitVar, false, Ty::Bool),
                  fm_bin(Expr::Op::Le, ivar("s"), fm_int(1))));
  return ts;
}

// a' = a, b' = c, c' = c, z' = max(a, b) with P = z ≥ 0. With candidate
// invariants QA: a ≥ 0, QB: b ≥ 0, QC: c ≥ 0 at k = 1, the property needs
// either QA or QB; the reduction drops QA first, commits to QB, and must then
// pull in QC to support it — a three-element {P, Q1, Q2} chain even though
// {P, QA} alone is 1-inductive.
inline TransitionSystem invariant_chain() {
  auto self = [](const std::string& v) {
    return fm_bin(Expr::Op::Eq, ivar(v, true), ivar(v));
  };
  TransitionSystem ts;
  ts.state_vars = {{kInitVar, Ty::Bool},
                   {"a", Ty::Int},
                   {"b", Ty::Int},
                   {"c", Ty::Int},
                   {"z", Ty::Int}};
  ts.init_pred = fm_var(kInitVar, false, Ty::Bool);
  ts.conjuncts = {
      {"ea", self("a"), true},
      {"eb", fm_bin(Expr::Op::Eq, ivar("b", true), ivar("c")), true},
      {"ec", self("c"), true},
      {"ez",
       fm_bin(Expr::Op::Eq, ivar("z", true),
              fm_ite(fm_bin(Expr::Op::Ge, ivar("a"), ivar("b")), ivar("a"), ivar("b"))),
       true},
      init_conjunct(),
  };
  ts.properties.emplace_back("P", ge0("z"));
  return ts;
}

inline std::vector<std::pair<std::string, FP>> chain_q() {
  return {{"QA", ge0("a")}, {"QB", ge0("b")}, {"QC", ge0("c")}};
}

}  // namespace ivck::fixture
