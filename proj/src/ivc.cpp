#include "ivckind/ivc.hpp"

#include "unroll.hpp"

#include <algorithm>
#include <chrono>

namespace ivck {

namespace {

long now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

std::string negate(const std::string& t) { return "(not " + t + ")"; }

std::string property_label(const TransitionSystem& ts) {
  std::string s;
  for (const auto& [pn, pf] : ts.properties) s += (s.empty() ? "" : ", ") + pn;
  return s;
}

// Core names ordered by conjunct source order.
std::vector<std::string> in_source_order(const TransitionSystem& ts,
                                         const std::set<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& c : ts.conjuncts)
    if (names.count(c.name)) out.push_back(c.name);
  return out;
}

}  // namespace

Verdict check_ivc(const TransitionSystem& ts, const std::set<std::string>& S,
                  const EngineConfig& cfg) {
  ProveOutcome out = prove(restrict_ts(ts, S), cfg);
  switch (out.status) {
    case ProveOutcome::Status::Proved: return Verdict::Yes;
    case ProveOutcome::Status::Falsified: return Verdict::No;
    default: return Verdict::Indeterminate;
  }
}

Verdict is_minimal(const TransitionSystem& ts, const std::set<std::string>& S,
                   const EngineConfig& cfg) {
  Verdict whole = check_ivc(ts, S, cfg);
  if (whole != Verdict::Yes) return whole == Verdict::No ? Verdict::No : Verdict::Indeterminate;
  bool indeterminate = false;
  for (const auto& x : S) {
    std::set<std::string> sub = S;
    sub.erase(x);
    Verdict v = check_ivc(ts, sub, cfg);
    if (v == Verdict::Yes) return Verdict::No;
    if (v == Verdict::Indeterminate) indeterminate = true;
  }
  return indeterminate ? Verdict::Indeterminate : Verdict::Yes;
}

namespace {

// The Algorithm-1 drop loop over an initial candidate set. Returns the final
// set and whether every drop decision was conclusive.
std::pair<std::set<std::string>, bool> bf_loop(const TransitionSystem& ts,
                                               const std::set<std::string>& initial,
                                               std::vector<NamedInvariant> seeds,
                                               const EngineConfig& cfg) {
  std::set<std::string> S = initial;
  bool certified = true;
  for (const auto& x : in_source_order(ts, initial)) {
    std::set<std::string> trial = S;
    trial.erase(x);
    ProveOutcome out = prove(restrict_ts(ts, trial), cfg, seeds);
    if (out.status == ProveOutcome::Status::Proved) {
      S = std::move(trial);
      for (const auto& inv : out.proof->invariants) seeds.push_back(inv);
    } else if (out.status == ProveOutcome::Status::Unknown) {
      certified = false;  // keep x conservatively
    }
  }
  return {S, certified};
}

}  // namespace

IvcResult ivc_bf(const TransitionSystem& ts, const InductiveProof& proof,
                 const EngineConfig& cfg) {
  long t0 = now_ms();
  auto all = ts.candidate_names();
  auto [core, certified] =
      bf_loop(ts, std::set<std::string>(all.begin(), all.end()), proof.invariants, cfg);
  IvcResult r;
  r.property = property_label(ts);
  r.core = in_source_order(ts, core);
  r.algorithm = "bf";
  r.minimal = certified;
  r.k_used = proof.k;
  r.proof_ms = proof.wall_ms;
  r.ivc_ms = now_ms() - t0;
  return r;
}

int minimize_k(const TransitionSystem& ts, const FP& p_all, int k, const EngineConfig& cfg) {
  Session s(cfg.solver, cfg.timeout_ms, dump_file(cfg, "minimize_k"));
  for (int kp = 1; kp < k; ++kp) {
    Sat r = check_ind_query(s, ts, {p_all}, p_all, kp);
    if (r == Sat::Unsat) return kp;
  }
  return k;
}

std::vector<NamedInvariant> reduce_invariants(const TransitionSystem& ts,
                                              const std::vector<NamedInvariant>& q,
                                              int k, const EngineConfig& cfg) {
  FP p = properties_formula(ts);
  std::vector<NamedInvariant> r_set{{property_label(ts), p}};
  if (q.empty()) return r_set;

  Session s(cfg.solver, cfg.timeout_ms, dump_file(cfg, "reduce"));
  for (int i = 0; i <= k; ++i) declare_step(s, ts, "", i);
  for (int i = 0; i < k; ++i) assert_transition(s, ts, "", i);

  // a_i => Q_i on steps 0..k-1.
  std::vector<std::pair<std::string, NamedInvariant>> remaining;  // (lit, invariant)
  for (const auto& inv : q) {
    std::string lit = "a~" + inv.first;
    std::string guarded = "(and";
    for (int j = 0; j < k; ++j) guarded += " " + inst(inv.second, "", j);
    guarded += ")";
    s.guard(lit, guarded);
    remaining.emplace_back(lit, inv);
  }

  for (;;) {
    s.push();
    std::string rk = "(and";
    for (const auto& [name, f] : r_set) {
      for (int j = 0; j < k; ++j) s.assert_text(inst(f, "", j));
      rk += " " + inst(f, "", k);
    }
    rk += ")";
    s.assert_text(negate(rk));

    std::vector<std::string> assumptions;
    for (const auto& [lit, inv] : remaining) assumptions.push_back(lit);
    Sat res = s.check(assumptions);
    if (res != Sat::Unsat)
      throw SessionError("invariant reduction: inductive query unexpectedly " +
                         std::string(res == Sat::Sat ? "sat" : "unknown"));
    std::vector<std::string> core = s.minimize_core(s.unsat_core());
    s.pop();
    if (core.empty()) break;
    std::set<std::string> used(core.begin(), core.end());
    std::vector<std::pair<std::string, NamedInvariant>> still;
    for (auto& [lit, inv] : remaining) {
      if (used.count(lit)) r_set.push_back(inv);
      else still.emplace_back(lit, inv);
    }
    remaining = std::move(still);
    if (remaining.empty() && core.empty()) break;
  }
  return r_set;
}

std::vector<std::string> minimize_ivc(const TransitionSystem& ts,
                                      const std::vector<NamedInvariant>& r, int k,
                                      const EngineConfig& cfg) {
  Session s(cfg.solver, cfg.timeout_ms, dump_file(cfg, "minimize_ivc"));
  // Two chains: "b." for the base cases, "i." for the inductive step. Every
  // candidate conjunct's instances on BOTH chains hang off one activation
  // literal, so the unsat core names whole conjuncts.
  for (int i = 0; i <= k; ++i) {
    declare_step(s, ts, "b.", i);
    declare_step(s, ts, "i.", i);
  }
  s.assert_text(inst(ts.init_pred, "b.", 0));

  std::vector<std::pair<std::string, std::string>> lits;  // (lit, conjunct name)
  for (const auto& c : ts.conjuncts) {
    std::string body = "(and";
    for (int i = 0; i < k; ++i)
      body += " " + inst(c.formula, "b.", i) + " " + inst(c.formula, "i.", i);
    body += ")";
    if (c.candidate) {
      std::string lit = "a~" + c.name;
      s.guard(lit, body);
      lits.emplace_back(lit, c.name);
    } else {
      s.assert_text(body);
    }
  }

  // Negated full query: some base case fails, or the inductive step fails.
  FP r_conj = fm_and([&] {
    std::vector<FP> fs;
    for (const auto& [name, f] : r) fs.push_back(f);
    return fs;
  }());
  std::string base_viol = "(or";
  for (int j = 1; j <= k; ++j) base_viol += " " + negate(inst(r_conj, "b.", j));
  base_viol += ")";
  std::string ind_viol = "(and";
  for (int j = 0; j < k; ++j) ind_viol += " " + inst(r_conj, "i.", j);
  ind_viol += " " + negate(inst(r_conj, "i.", k)) + ")";
  s.assert_text("(or " + base_viol + " " + ind_viol + ")");

  std::vector<std::string> assumptions;
  for (const auto& [lit, name] : lits) assumptions.push_back(lit);
  Sat res = s.check(assumptions);
  if (res != Sat::Unsat)
    throw SessionError("ivc minimization: negated full query unexpectedly " +
                       std::string(res == Sat::Sat ? "sat" : "unknown"));
  std::vector<std::string> core = s.minimize_core(s.unsat_core());

  std::set<std::string> keep;
  for (const auto& lit : core)
    for (const auto& [l, name] : lits)
      if (l == lit) keep.insert(name);
  return in_source_order(ts, keep);
}

IvcResult ivc_uc(const TransitionSystem& ts, const InductiveProof& proof,
                 const EngineConfig& cfg) {
  long t0 = now_ms();
  FP p = properties_formula(ts);
  std::vector<FP> all{p};
  for (const auto& [name, f] : proof.invariants) all.push_back(f);

  int k = minimize_k(ts, fm_and(all), proof.k, cfg);
  std::vector<NamedInvariant> r = reduce_invariants(ts, proof.invariants, k, cfg);
  std::vector<std::string> core = minimize_ivc(ts, r, k, cfg);

  // Validity re-check on the restricted system.
  std::set<std::string> core_set(core.begin(), core.end());
  ProveOutcome check = prove(restrict_ts(ts, core_set), cfg, proof.invariants);
  if (check.status != ProveOutcome::Status::Proved)
    throw SessionError("ivc_uc: restricted system failed validity re-check");

  IvcResult res;
  res.property = property_label(ts);
  res.core = std::move(core);
  res.algorithm = "uc";
  res.minimal = false;  // UC carries no minimality certificate
  res.k_used = k;
  for (size_t i = 1; i < r.size(); ++i) res.invariants_used.push_back(r[i].first);
  res.proof_ms = proof.wall_ms;
  res.ivc_ms = now_ms() - t0;
  return res;
}

IvcResult ivc_ucbf(const TransitionSystem& ts, const InductiveProof& proof,
                   const EngineConfig& cfg) {
  long t0 = now_ms();
  IvcResult uc = ivc_uc(ts, proof, cfg);
  std::set<std::string> start(uc.core.begin(), uc.core.end());
  auto [core, certified] = bf_loop(ts, start, proof.invariants, cfg);

  IvcResult res = uc;
  res.core = in_source_order(ts, core);
  res.algorithm = "ucbf";
  res.minimal = certified;
  res.ivc_ms = now_ms() - t0;
  return res;
}

}  // namespace ivck
