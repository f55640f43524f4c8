#include "ivckind/bench.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>

using namespace ivck;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("ivk_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void copy_model(const fs::path& dir, const std::string& name) {
  fs::copy_file(oracle::corpus_path(name), dir / name);
}

BenchConfig tiny_config(const fs::path& corpus, const fs::path& out) {
  BenchConfig cfg;
  cfg.corpus_dir = corpus.string();
  cfg.solvers = {oracle::test_config().solver};
  cfg.algorithms = {"check", "ucbf"};
  cfg.max_k = 4;  // keeps drift.lus in "unknown" territory quickly
  cfg.timeout_ms = 60000;
  cfg.out_dir = out.string();
  return cfg;
}

std::map<std::string, std::string> statuses(const std::vector<RunRecord>& recs) {
  std::map<std::string, std::string> m;
  for (const auto& r : recs) m[r.model + "/" + r.algorithm] = r.status;
  return m;
}

}  // namespace

TEST_CASE("run_one: proved, cex, unknown, and error records") {
  BenchConfig cfg;
  cfg.max_k = 4;
  cfg.timeout_ms = 60000;
  SolverSpec solver = oracle::test_config().solver;

  RunRecord ok = run_one(oracle::corpus_path("filter.lus"), solver, "ucbf", cfg);
  CHECK(ok.status == "proved");
  CHECK(ok.core == std::vector<std::string>{"b", "y"});
  CHECK(ok.minimal);
  CHECK(ok.slice_size == 6);
  CHECK(ok.model == "filter");

  RunRecord cex = run_one(oracle::corpus_path("counter_bad.lus"), solver, "uc", cfg);
  CHECK(cex.status == "cex");
  CHECK(cex.cex_length == 3);
  CHECK(cex.core.empty());

  RunRecord unk = run_one(oracle::corpus_path("drift.lus"), solver, "bf", cfg);
  CHECK(unk.status == "unknown");
  CHECK(!unk.error.empty());

  RunRecord err = run_one(oracle::corpus_path("broken/bad_syntax.lus"), solver, "check", cfg);
  CHECK(err.status == "error");
  CHECK(!err.error.empty());

  RunRecord missing = run_one("/nonexistent/model.lus", solver, "check", cfg);
  CHECK(missing.status == "error");

  RunRecord badsolver =
      run_one(oracle::corpus_path("counter.lus"), SolverSpec{"none", "/nonexistent/solver"},
              "check", cfg);
  CHECK(badsolver.status == "error");
}

TEST_CASE("run_matrix: full matrix over a mixed corpus, resume, and force") {
  TempDir corpus("corpus");
  TempDir out("records");
  copy_model(corpus.path, "toy_ab.lus");
  copy_model(corpus.path, "counter_bad.lus");
  copy_model(corpus.path, "drift.lus");
  {
    std::ofstream bad(corpus.path / "unparseable.lus");
    bad << "node oops( returns (ok : bool);\n";
  }
  BenchConfig cfg = tiny_config(corpus.path, out.path);

  auto first = run_matrix(cfg);
  REQUIRE(first.size() == 8);  // 4 models x 1 solver x 2 algorithms
  auto st = statuses(first);
  CHECK(st["toy_ab/check"] == "proved");
  CHECK(st["toy_ab/ucbf"] == "proved");
  CHECK(st["counter_bad/check"] == "cex");
  CHECK(st["counter_bad/ucbf"] == "cex");
  CHECK(st["drift/ucbf"] == "unknown");
  CHECK(st["unparseable/check"] == "error");

  // sorted by (model, solver, algorithm)
  for (size_t i = 1; i < first.size(); ++i)
    CHECK(std::tie(first[i - 1].model, first[i - 1].solver, first[i - 1].algorithm) <
          std::tie(first[i].model, first[i].solver, first[i].algorithm));

  // one record file per cell, loadable back
  auto loaded = load_records(cfg.out_dir);
  CHECK(loaded.size() == 8);

  // resume: existing records are reused, so payloads match exactly
  // (including timings, which would differ on recomputation)
  auto second = run_matrix(cfg);
  REQUIRE(second.size() == first.size());
  for (size_t i = 0; i < first.size(); ++i) CHECK(second[i].to_json() == first[i].to_json());

  // force: recomputed records keep the same observable payload
  cfg.force = true;
  auto third = run_matrix(cfg);
  REQUIRE(third.size() == first.size());
  for (size_t i = 0; i < first.size(); ++i) {
    CHECK(third[i].status == first[i].status);
    CHECK(third[i].core == first[i].core);
    CHECK(third[i].k == first[i].k);
    CHECK(third[i].cex_length == first[i].cex_length);
  }

  // parallel run agrees with the sequential one
  cfg.jobs = 4;
  auto fourth = run_matrix(cfg);
  REQUIRE(fourth.size() == first.size());
  for (size_t i = 0; i < first.size(); ++i) {
    CHECK(fourth[i].status == first[i].status);
    CHECK(fourth[i].core == first[i].core);
  }
}

TEST_CASE("summarize: status counts and sane aggregates") {
  TempDir corpus("scorpus");
  TempDir out("srecords");
  copy_model(corpus.path, "toy_ab.lus");
  copy_model(corpus.path, "counter_bad.lus");
  BenchConfig cfg = tiny_config(corpus.path, out.path);
  cfg.algorithms = {"check", "uc", "ucbf"};
  auto recs = run_matrix(cfg);
  Summary s = summarize(recs);
  CHECK(s.csv.rfind("table,key,", 0) == 0);
  auto j = s.json;
  CHECK(j.find("\"statuses\"") != std::string::npos);
  CHECK(j.find("\"proved\": 3") != std::string::npos);
  CHECK(j.find("\"cex\": 3") != std::string::npos);
  // uc and ucbf both found the singleton core, so the size increase is 0%
  CHECK(j.find("\"uc_vs_ucbf_size_increase_percent\"") != std::string::npos);
}
