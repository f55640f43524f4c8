#pragma once

#include "ivckind/analysis.hpp"
#include "ivckind/induction.hpp"

#include <string>
#include <vector>

namespace ivck {

struct BenchConfig {
  std::string corpus_dir;
  std::vector<SolverSpec> solvers;       // at least one
  std::vector<std::string> algorithms;   // of "check", "uc", "bf", "ucbf"
  int max_k = 20;
  int timeout_ms = 60000;
  int jobs = 1;
  std::string out_dir;                   // record files land here
  bool force = false;                    // recompute existing records
};

// Runs one (model, solver, algorithm) cell; never throws — failures become
// status "error" records.
RunRecord run_one(const std::string& model_path, const SolverSpec& solver,
                  const std::string& algorithm, const BenchConfig& cfg);

// One record per (model × solver × algorithm). Existing record files are
// reused unless cfg.force; writes are atomic (temp file + rename). Output is
// sorted by (model, solver, algorithm).
std::vector<RunRecord> run_matrix(const BenchConfig& cfg);

struct Summary {
  std::string csv;
  std::string json;
};

Summary summarize(const std::vector<RunRecord>& records);

// Loads every *.json record in a directory.
std::vector<RunRecord> load_records(const std::string& dir);

}  // namespace ivck
