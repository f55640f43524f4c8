// Independent oracles used to validate derived test values. Everything here
// is deliberately brute-force: power-set enumeration over prove(), reference
// floating-point metric math, and randomized inputs with fixed seeds.
#pragma once

#include "ivckind/frontend.hpp"
#include "ivckind/induction.hpp"
#include "ivckind/ivc.hpp"

#include <random>
#include <set>
#include <string>
#include <vector>

namespace ivck::oracle {

// Engine configuration for tests: solver from $IVC_KIND_SOLVER.
EngineConfig test_config();

// Resolves a file under $CORPUS_DIR (falls back to ../corpus).
std::string corpus_path(const std::string& file);
std::string read_file(const std::string& path);

Program load_program(const std::string& file);              // parsed only
TransitionSystem load_ts(const std::string& file);          // parse+normalize+lower

// Definition 1 via a fresh prove() of the restricted system.
bool is_ivc(const TransitionSystem& ts, const std::set<std::string>& core,
            const EngineConfig& cfg);

// Definition 2: core is an IVC and no single-element-removed subset is.
bool minimal_core(const TransitionSystem& ts, const std::set<std::string>& core,
                  const EngineConfig& cfg);

// All R ⊆ {P} ∪ Q with P ∈ R whose conjunction is k-inductive for ts
// (inductive step only, mirroring ReduceInvariants' obligation). |Q| <= 8.
std::vector<std::set<std::string>> inductive_r_subsets(const TransitionSystem& ts,
                                                       const std::vector<NamedInvariant>& q,
                                                       int k, const EngineConfig& cfg);

// Reference Jaccard distance in floating point.
double jaccard_ref(const std::set<std::string>& a, const std::set<std::string>& b);

// Random subset of a universe {e0..e(n-1)}.
std::set<std::string> random_set(std::mt19937& rng, int universe);

}  // namespace ivck::oracle
