#include "ivckind/induction.hpp"

#include "unroll.hpp"

#include <atomic>
#include <chrono>
#include <set>
#include <sstream>

namespace ivck {

namespace {

std::atomic<int> g_session_counter{0};

long now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

std::string negate(const std::string& term) { return "(not " + term + ")"; }

Step model_step(const TransitionSystem& ts, const Model& m, const std::string& chain, int i) {
  Step out;
  for (const auto& [v, ty] : ts.state_vars) {
    std::string sym = step_sym(chain, v, i);
    if (ty == Ty::Bool) {
      auto it = m.bools.find(sym);
      out[v] = value_bool(it != m.bools.end() && it->second);
    } else {
      auto it = m.nums.find(sym);
      Rat r = it != m.nums.end() ? it->second : Rat(0);
      out[v] = ty == Ty::Int ? value_int(numerator(r)) : value_real(r);
    }
  }
  return out;
}

}  // namespace

std::string dump_file(const EngineConfig& cfg, const std::string& label) {
  if (cfg.dump_dir.empty()) return "";
  return cfg.dump_dir + "/" + std::to_string(g_session_counter++) + "_" + label + ".smt2";
}

Sat check_base_query(Session& s, const TransitionSystem& ts, const FP& p, int k) {
  s.push();
  for (int i = 0; i <= k; ++i) declare_step(s, ts, "b.", i);
  s.assert_text(inst(ts.init_pred, "b.", 0));
  for (int i = 0; i < k; ++i) assert_transition(s, ts, "b.", i);
  std::string viol = "(or";
  for (int j = 1; j <= k; ++j) viol += " " + negate(inst(p, "b.", j));
  viol += ")";
  s.assert_text(viol);
  Sat r = s.check();
  s.pop();
  return r;
}

Sat check_ind_query(Session& s, const TransitionSystem& ts, const std::vector<FP>& q,
                    const FP& p, int k) {
  s.push();
  for (int i = 0; i <= k; ++i) declare_step(s, ts, "i.", i);
  for (int i = 0; i < k; ++i) assert_transition(s, ts, "i.", i);
  for (int j = 0; j < k; ++j)
    for (const auto& f : q) s.assert_text(inst(f, "i.", j));
  s.assert_text(negate(inst(p, "i.", k)));
  Sat r = s.check();
  s.pop();
  return r;
}

Sat check_full_query(Session& s, const TransitionSystem& ts, const FP& p_all, int k) {
  Sat base = check_base_query(s, ts, p_all, k);
  if (base != Sat::Unsat) return base;
  return check_ind_query(s, ts, {p_all}, p_all, k);
}

std::optional<Counterexample> bmc(const TransitionSystem& ts, const EngineConfig& cfg,
                                  int max_k) {
  Session s(cfg.solver, cfg.timeout_ms, dump_file(cfg, "bmc"));
  FP p = properties_formula(ts);
  declare_step(s, ts, "", 0);
  s.assert_text(inst(ts.init_pred, "", 0));
  for (int j = 1; j <= max_k; ++j) {
    declare_step(s, ts, "", j);
    assert_transition(s, ts, "", j - 1);
    s.push();
    s.assert_text(negate(inst(p, "", j)));
    Sat r = s.check();
    if (r == Sat::Sat) {
      Model m = s.model();
      Counterexample cex;
      cex.length = j;
      for (int i = 0; i <= j; ++i) cex.trace.push_back(model_step(ts, m, "", i));
      return cex;
    }
    s.pop();
    if (r == Sat::Unknown) return std::nullopt;  // inconclusive from this depth on
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Invariant generation

namespace {

// primed occurrences rewritten to unprimed; nullptr when the term mentions
// the init flag (init-relative facts make poor state candidates).
FP unprime(const FP& f) {
  if (f->k == Fm::K::Var) {
    if (f->name == kInitVar) return nullptr;
    if (!f->primed) return f;
    return fm_var(f->name, false, f->type);
  }
  Fm copy = *f;
  for (auto& a : copy.args) {
    a = unprime(a);
    if (!a) return nullptr;
  }
  return std::make_shared<Fm>(std::move(copy));
}

struct CandidateSet {
  std::vector<FP> phis;           // unguarded state predicates, in order
  std::set<std::string> seen;     // dedup by rendered text

  void add(const FP& phi) {
    if (!phi) return;
    std::string key = fm_to_smt(phi, [](const std::string& v, bool primed) {
      return primed ? v + "'" : v;
    });
    if (seen.insert(key).second) phis.push_back(phi);
  }
};

void bool_subterms(const FP& f, std::vector<FP>* out) {
  for (const auto& a : f->args) {
    if (a->type == Ty::Bool &&
        (a->k == Fm::K::Binary || (a->k == Fm::K::Unary && a->op == Expr::Op::Not)))
      out->push_back(a);
    bool_subterms(a, out);
  }
}

}  // namespace

std::vector<NamedInvariant> generate_invariants(const TransitionSystem& ts,
                                                const EngineConfig& cfg,
                                                const std::vector<NamedInvariant>& seeds) {
  CandidateSet cands;
  // Seeds first: previously proven invariants are cheap to re-establish.
  for (const auto& [name, f] : seeds) cands.add(f);

  // 1. Sign templates for numeric state variables.
  for (const auto& [v, ty] : ts.state_vars) {
    if (ty == Ty::Bool) continue;
    FP var = fm_var(v, false, ty);
    FP zero = ty == Ty::Int ? fm_int(Int(0)) : fm_real(Rat(0));
    cands.add(fm_bin(Expr::Op::Ge, var, zero));
    cands.add(fm_bin(Expr::Op::Le, var, zero));
  }
  // 2. Boolean subterms of the conjuncts and properties, unprimed.
  for (const auto& c : ts.conjuncts) {
    std::vector<FP> subs;
    bool_subterms(c.formula, &subs);
    for (const auto& sub : subs) cands.add(unprime(sub));
  }
  for (const auto& [pn, pf] : ts.properties) {
    std::vector<FP> subs;
    bool_subterms(pf, &subs);
    for (const auto& sub : subs) cands.add(unprime(sub));
  }
  // 3. Boolean state variables and their negations.
  std::vector<FP> bool_vars;
  for (const auto& [v, ty] : ts.state_vars)
    if (ty == Ty::Bool && v != kInitVar) bool_vars.push_back(fm_var(v, false, Ty::Bool));
  for (const auto& bv : bool_vars) {
    cands.add(bv);
    cands.add(fm_un(Expr::Op::Not, bv));
  }
  // 4. Pairwise implications among boolean state variables.
  for (const auto& u : bool_vars)
    for (const auto& v : bool_vars)
      if (u->name != v->name) cands.add(fm_bin(Expr::Op::Imp, u, v));

  if (cands.phis.empty()) return {};

  // Guard every candidate so the base step is trivially satisfied; survivors
  // of the inductive fixpoint are then genuine invariants.
  FP init = fm_var(kInitVar, false, Ty::Bool);
  struct Cand {
    std::string name;
    FP guarded;
  };
  std::vector<Cand> survivors;
  for (size_t i = 0; i < cands.phis.size(); ++i)
    survivors.push_back({"q" + std::to_string(i), fm_bin(Expr::Op::Or, init, cands.phis[i])});

  Session s(cfg.solver, cfg.timeout_ms, dump_file(cfg, "invgen"));
  declare_step(s, ts, "", 0);
  declare_step(s, ts, "", 1);
  assert_transition(s, ts, "", 0);

  while (!survivors.empty()) {
    s.push();
    std::string viol = "(or";
    for (const auto& c : survivors) {
      s.assert_text(inst(c.guarded, "", 0));
      viol += " " + negate(inst(c.guarded, "", 1));
    }
    viol += ")";
    s.assert_text(viol);
    Sat r = s.check();
    if (r == Sat::Unsat) {
      s.pop();
      break;
    }
    if (r == Sat::Unknown) return {};  // give up on invariant generation
    Model m = s.model();
    auto lookup = [&](const std::string& v, bool primed) {
      std::string sym = step_sym("", v, primed ? 2 : 1);
      Ty ty = Ty::Bool;
      for (const auto& [sv, st] : ts.state_vars)
        if (sv == v) ty = st;
      if (ty == Ty::Bool) {
        auto it = m.bools.find(sym);
        return value_bool(it != m.bools.end() && it->second);
      }
      auto it = m.nums.find(sym);
      Rat rv = it != m.nums.end() ? it->second : Rat(0);
      return ty == Ty::Int ? value_int(numerator(rv)) : value_real(rv);
    };
    std::vector<Cand> next;
    for (const auto& c : survivors)
      if (fm_eval(c.guarded, lookup).b) next.push_back(c);
    if (next.size() == survivors.size()) {
      // Defensive: the model must falsify at least one survivor.
      throw SessionError("invariant fixpoint made no progress");
    }
    survivors = std::move(next);
    s.pop();
  }

  std::vector<NamedInvariant> out;
  for (const auto& c : survivors) out.emplace_back(c.name, c.guarded);
  return out;
}

// ---------------------------------------------------------------------------
// Interleaved BMC + k-induction

ProveOutcome prove(const TransitionSystem& ts, const EngineConfig& cfg,
                   const std::vector<NamedInvariant>& seed_invariants) {
  long t0 = now_ms();
  ProveOutcome out;
  std::string prop_names;
  for (const auto& [pn, pf] : ts.properties)
    prop_names += (prop_names.empty() ? "" : ", ") + pn;

  try {
    std::vector<NamedInvariant> q = generate_invariants(ts, cfg, seed_invariants);
    FP p = properties_formula(ts);
    std::vector<FP> p_all_list{p};
    for (const auto& [name, f] : q) p_all_list.push_back(f);
    FP p_all = fm_and(p_all_list);

    Session bmc_s(cfg.solver, cfg.timeout_ms, dump_file(cfg, "bmc"));
    Session ind_s(cfg.solver, cfg.timeout_ms, dump_file(cfg, "ind"));
    declare_step(bmc_s, ts, "", 0);
    bmc_s.assert_text(inst(ts.init_pred, "", 0));
    declare_step(ind_s, ts, "", 0);

    bool bmc_alive = true;
    bool saw_unknown = false;
    for (int k = 1; k <= cfg.max_k; ++k) {
      if (bmc_alive) {
        declare_step(bmc_s, ts, "", k);
        assert_transition(bmc_s, ts, "", k - 1);
        bmc_s.push();
        bmc_s.assert_text(negate(inst(p, "", k)));
        Sat r = bmc_s.check();
        if (r == Sat::Sat) {
          Model m = bmc_s.model();
          Counterexample cex;
          cex.length = k;
          for (int i = 0; i <= k; ++i) cex.trace.push_back(model_step(ts, m, "", i));
          out.status = ProveOutcome::Status::Falsified;
          out.cex = std::move(cex);
          return out;
        }
        bmc_s.pop();
        if (r == Sat::Unknown) {
          bmc_alive = false;  // cannot trust deeper base checks
          saw_unknown = true;
        }
      }

      declare_step(ind_s, ts, "", k);
      assert_transition(ind_s, ts, "", k - 1);
      ind_s.push();
      for (int j = 0; j < k; ++j) ind_s.assert_text(inst(p_all, "", j));
      ind_s.assert_text(negate(inst(p_all, "", k)));
      Sat r = ind_s.check();
      ind_s.pop();
      if (r == Sat::Unknown) {
        saw_unknown = true;
        continue;
      }
      if (r == Sat::Unsat) {
        if (!bmc_alive)
          // Base cases beyond the last conclusive BMC depth are unverified.
          break;
        Session check_s(cfg.solver, cfg.timeout_ms, dump_file(cfg, "validate"));
        if (check_full_query(check_s, ts, p_all, k) != Sat::Unsat)
          throw SessionError("proof validation failed at k=" + std::to_string(k));
        InductiveProof proof;
        proof.property = prop_names;
        proof.k = k;
        proof.invariants = q;
        proof.wall_ms = now_ms() - t0;
        out.status = ProveOutcome::Status::Proved;
        out.proof = std::move(proof);
        return out;
      }
    }
    out.status = ProveOutcome::Status::Unknown;
    out.reason = saw_unknown ? "solver returned unknown" : "max_k exhausted";
    return out;
  } catch (const SessionTimeout& e) {
    out.status = ProveOutcome::Status::Unknown;
    out.reason = e.what();
    return out;
  }
}

}  // namespace ivck
