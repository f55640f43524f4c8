#pragma once

#include "ivckind/frontend.hpp"
#include "ivckind/smt_session.hpp"
#include "ivckind/transition_system.hpp"

#include <optional>

namespace ivck {

struct EngineConfig {
  SolverSpec solver;        // see default_solver()
  int max_k = 20;
  int timeout_ms = 60000;   // per query
  std::string dump_dir;     // when nonempty, SMT transcripts are written here
};

// Named invariant (state predicate). Generated invariants are guarded
// `init ∨ φ` so the base step is unconditionally satisfied.
using NamedInvariant = std::pair<std::string, FP>;

struct InductiveProof {
  std::string property;
  int k = 1;
  std::vector<NamedInvariant> invariants;  // Q
  long wall_ms = 0;
};

struct Counterexample {
  int length = 0;            // transition count; trace has length+1 states
  std::vector<Step> trace;   // per-state values, index 0 = pre-initial state
};

struct ProveOutcome {
  enum class Status { Proved, Falsified, Unknown };
  Status status = Status::Unknown;
  std::optional<InductiveProof> proof;
  std::optional<Counterexample> cex;
  std::string reason;  // for Unknown
};

// k-induction query validity checks (each runs fresh assertions inside the
// supplied session via push/pop; returns the satisfiability of the query's
// NEGATION, so Unsat means the query is valid).
Sat check_base_query(Session& s, const TransitionSystem& ts, const FP& p, int k);
Sat check_ind_query(Session& s, const TransitionSystem& ts, const std::vector<FP>& q,
                    const FP& p, int k);
Sat check_full_query(Session& s, const TransitionSystem& ts, const FP& p_all, int k);

// Shortest counterexample of length <= max_k, or nullopt. Throws
// SessionError on solver failure; Unknown at some depth aborts the search.
std::optional<Counterexample> bmc(const TransitionSystem& ts, const EngineConfig& cfg,
                                  int max_k);

// Houdini fixpoint over syntactic candidates (sign templates, boolean
// subterms, boolean variables, pairwise implications), each guarded with
// init ∨ ·. Every returned predicate is 1-inductive relative to the guarded
// form. `seeds` are tried first (used to reuse invariants across runs).
std::vector<NamedInvariant> generate_invariants(const TransitionSystem& ts,
                                                const EngineConfig& cfg,
                                                const std::vector<NamedInvariant>& seeds = {});

// Interleaved BMC + k-induction with generated invariants; validates any
// proof against a fresh session before returning it.
ProveOutcome prove(const TransitionSystem& ts, const EngineConfig& cfg,
                   const std::vector<NamedInvariant>& seed_invariants = {});

}  // namespace ivck
