#pragma once

#include "ivckind/numeric.hpp"
#include "ivckind/transition_system.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ivck {

using Core = std::set<std::string>;

// Jaccard distance 1 - |A∩B| / |A∪B|; 0 when both sets are empty.
Rat jaccard(const Core& a, const Core& b);

// Statistics over all C(n,2) pairwise distances. Exact rationals; the
// variance is population (not sample) variance, and stdev is its double
// square root.
struct PairwiseStats {
  int pairs = 0;
  Rat min, max, mean, variance;
  double stdev() const;
};

std::optional<PairwiseStats> pairwise_stats(const std::vector<Core>& cores);  // none when n<2

// Intersection of all cores.
Core core_set(const std::vector<Core>& cores);

// Mean Jaccard distance of each core to the core set.
Rat overall_dissimilarity(const std::vector<Core>& cores);

// 100 * ivc_time / baseline_proof_time; nullopt when the baseline is zero.
std::optional<double> overhead_percent(long ivc_ms, long baseline_ms);

// Theorem-1 wrapper: fresh booleans x, y; initial predicate I ∧ ¬x; exactly
// two candidate conjuncts x'⇒y' and (y'⇒P')∧T; property x ⇒ P. The
// two-conjunct core is a minimal IVC iff the base property is invalid.
TransitionSystem gadget(const TransitionSystem& base);

// One persisted run of (model × solver × algorithm). The record naming and
// JSON shape double as the on-disk database for the bench runner.
struct RunRecord {
  std::string model;
  std::string solver;
  std::string algorithm;  // "check", "uc", "bf", "ucbf"
  std::string status;     // proved | cex | unknown | error
  std::vector<std::string> core;
  bool minimal = false;
  int k = 0;
  int cex_length = -1;
  int slice_size = -1;
  long proof_ms = 0;
  long ivc_ms = 0;
  std::string error;

  std::string to_json() const;
  static RunRecord from_json(const std::string& text);
  std::string file_name() const;  // <model>__<solver>__<algo>.json
};

// Diversity report over one model's records (one core per configuration).
struct DiversityReport {
  std::string model;
  std::vector<std::pair<std::string, Core>> cores;  // label -> core
  std::optional<PairwiseStats> stats;
  Core core;                 // C_M
  Rat dissimilarity;         // D_J{M} over all cores
  Rat dissimilarity_no_bf;   // D_J{M} excluding BF-algorithm cores

  std::string to_json() const;
};

DiversityReport diversity_report(const std::string& model,
                                 const std::vector<RunRecord>& records);

// CSV renderings used by the `diversity` subcommand.
std::string diversity_summary_csv(const std::vector<DiversityReport>& reports);
std::string pairwise_distances_csv(const std::vector<DiversityReport>& reports);

}  // namespace ivck
