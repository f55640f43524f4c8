#pragma once

#include "ivckind/induction.hpp"

namespace ivck {

struct IvcResult {
  std::string property;
  std::vector<std::string> core;  // conjunct names, source order
  std::string algorithm;          // "bf" | "uc" | "ucbf"
  bool minimal = false;           // certified minimal (BF/UCBF completions only)
  int k_used = 1;
  std::vector<std::string> invariants_used;  // names of invariants in R (without P)
  long proof_ms = 0;
  long ivc_ms = 0;
};

enum class Verdict { Yes, No, Indeterminate };

// Definition-1 check: does the property still hold when only the conjuncts
// in S (plus non-candidates) remain?
Verdict check_ivc(const TransitionSystem& ts, const std::set<std::string>& S,
                  const EngineConfig& cfg);

// Definition-2 check: S is an IVC and no single-element-removed subset is.
Verdict is_minimal(const TransitionSystem& ts, const std::set<std::string>& S,
                   const EngineConfig& cfg);

// Brute-force minimal IVC (Algorithm "brute force"): drop one candidate at a
// time, keeping drops whose restricted system still proves the property.
// Invariants discovered along the way seed later prover calls. A per-element
// Unknown keeps the element and clears the minimality certificate.
IvcResult ivc_bf(const TransitionSystem& ts, const InductiveProof& proof,
                 const EngineConfig& cfg);

// Smallest k' <= k for which P_all is k'-inductive (inductive query only).
int minimize_k(const TransitionSystem& ts, const FP& p_all, int k, const EngineConfig& cfg);

// Activation-literal fixpoint dropping invariants not needed to keep P
// k-inductive. Returns R (property formula first). Not globally minimal.
std::vector<NamedInvariant> reduce_invariants(const TransitionSystem& ts,
                                              const std::vector<NamedInvariant>& q,
                                              int k, const EngineConfig& cfg);

// Guards every candidate conjunct, refutes the negated full k-induction query,
// and reads the needed conjuncts off the minimized unsat core.
std::vector<std::string> minimize_ivc(const TransitionSystem& ts,
                                      const std::vector<NamedInvariant>& r, int k,
                                      const EngineConfig& cfg);

// UNSAT-core pipeline: minimize_k, reduce_invariants, minimize_ivc, then one
// validity re-proof of the restricted system.
IvcResult ivc_uc(const TransitionSystem& ts, const InductiveProof& proof,
                 const EngineConfig& cfg);

// Hybrid: ivc_uc, then the brute-force drop loop over the UC core only.
IvcResult ivc_ucbf(const TransitionSystem& ts, const InductiveProof& proof,
                   const EngineConfig& cfg);

}  // namespace ivck
