// Command-line front end. All functionality goes through the C API in
// ivc_kind.h; this file only does argument handling and output formatting.
#include "ivc_kind.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <iostream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct Options {
  std::string model_path;
  std::string solver;
  std::string solver_name;
  int max_k = 20;
  int timeout_ms = 60000;
  std::string algorithm = "uc";
  std::string json_out;
  std::string dump_smt;
  std::string root;
};

int read_file(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return IVK_USAGE;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  *out = ss.str();
  return IVK_OK;
}

int write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return IVK_USAGE;
  }
  out << text;
  return IVK_OK;
}

std::string take(char*& s) {
  std::string out = s ? s : "";
  ivk_string_free(s);
  s = nullptr;
  return out;
}

ivk_model* load_model(const std::string& path, int* rc) {
  std::string source;
  *rc = read_file(path, &source);
  if (*rc != IVK_OK) return nullptr;
  char* err = nullptr;
  ivk_model* m = ivk_model_load(source.c_str(), &err);
  if (!m) {
    std::cerr << path << ": " << take(err) << "\n";
    *rc = IVK_USAGE;
  }
  return m;
}

std::string options_json(const Options& o) {
  json j;
  if (!o.solver.empty()) j["solver"] = o.solver;
  if (!o.solver_name.empty()) j["solver_name"] = o.solver_name;
  j["max_k"] = o.max_k;
  j["timeout_ms"] = o.timeout_ms;
  j["algorithm"] = o.algorithm;
  if (!o.dump_smt.empty()) j["dump_smt"] = o.dump_smt;
  return j.dump();
}

// Prints the result (pretty text on stdout, optional JSON file) and maps the
// API status straight to the exit code.
int finish(const Options& o, int rc, char* result, char* err) {
  std::string res = take(result);
  std::string msg = take(err);
  if (!msg.empty()) std::cerr << "error: " << msg << "\n";
  if (res.empty()) return rc ? rc : IVK_INTERNAL;
  if (!o.json_out.empty()) {
    int w = write_file(o.json_out, res + "\n");
    if (w != IVK_OK) return w;
  }
  json j = json::parse(res);
  std::string status = j.value("status", "");
  if (status == "proved" && j.contains("core")) {
    std::cout << "proved, " << j["k"].get<int>() << "-inductive\n";
    std::cout << "ivc (" << j["algorithm"].get<std::string>() << ", "
              << (j["minimal"].get<bool>() ? "minimal" : "not certified minimal")
              << "): " << j["core"].size() << " elements\n";
    for (const auto& c : j["core"]) std::cout << "  " << c.get<std::string>() << "\n";
    std::cout << "proof " << j["proof_ms"].get<long>() << " ms, ivc "
              << j["ivc_ms"].get<long>() << " ms\n";
  } else if (status == "proved") {
    std::cout << "proved, " << j["k"].get<int>() << "-inductive ("
              << j["invariants"].size() << " auxiliary invariants, "
              << j["time_ms"].get<long>() << " ms)\n";
  } else if (status == "cex") {
    std::cout << "falsified: counterexample of " << j["lustre_length"].get<int>()
              << " steps\n";
    int step = -1;  // index 0 is the pre-initial state
    for (const auto& state : j["trace"]) {
      if (step >= 0) {
        std::cout << "  step " << step << ":";
        for (auto it = state.begin(); it != state.end(); ++it) {
          if (it.key() == "init" || it.key().find('~') != std::string::npos) continue;
          std::cout << " " << it.key() << "=" << it.value().get<std::string>();
        }
        std::cout << "\n";
      }
      ++step;
    }
  } else if (status == "unknown") {
    std::cout << "unknown: " << j.value("reason", "") << "\n";
  } else {
    std::cout << res << "\n";
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SMT-based k-induction model checker with inductive validity cores"};
  app.require_subcommand(1);
  Options o;

  auto add_engine_flags = [&](CLI::App* c) {
    c->add_option("--solver", o.solver, "solver command (default: $IVC_KIND_SOLVER or minismt)");
    c->add_option("--solver-name", o.solver_name, "solver label used in reports");
    c->add_option("--max-k", o.max_k, "maximum induction depth")->capture_default_str();
    c->add_option("--timeout", o.timeout_ms, "per-query timeout, ms")->capture_default_str();
    c->add_option("--json", o.json_out, "write the result JSON to this file");
    c->add_option("--dump-smt", o.dump_smt, "write SMT transcripts to this directory");
  };

  auto* check = app.add_subcommand("check", "prove or refute the properties by k-induction");
  check->add_option("model", o.model_path, "Lustre file")->required();
  add_engine_flags(check);

  auto* ivc = app.add_subcommand("ivc", "prove, then extract an inductive validity core");
  ivc->add_option("model", o.model_path, "Lustre file")->required();
  ivc->add_option("-a,--algorithm", o.algorithm, "uc | bf | ucbf")->capture_default_str();
  add_engine_flags(ivc);

  auto* slice = app.add_subcommand("slice", "backward slice over equation dependencies");
  slice->add_option("model", o.model_path, "Lustre file")->required();
  slice->add_option("--root", o.root, "slice root (default: every property)");
  slice->add_option("--json", o.json_out, "write the result JSON to this file");

  auto* dump = app.add_subcommand("dump", "print the lowered transition system as SMT-LIB text");
  dump->add_option("model", o.model_path, "Lustre file")->required();

  std::string records_dir, out_dir;
  auto* diversity = app.add_subcommand("diversity", "Jaccard diversity over bench run records");
  diversity->add_option("records", records_dir, "directory of run-record JSON files")->required();
  diversity->add_option("--out-dir", out_dir, "write diversity.json + CSV tables here");

  std::string corpus_dir;
  std::vector<std::string> solver_specs;  // name=command
  std::string algorithms = "check,uc,bf,ucbf";
  int jobs = 1;
  bool force = false;
  auto* bench = app.add_subcommand("bench", "run the (model x solver x algorithm) matrix");
  bench->add_option("corpus", corpus_dir, "directory of .lus models")->required();
  bench->add_option("--out", out_dir, "record/summary output directory")->required();
  bench->add_option("--solver", solver_specs, "solver as name=command (repeatable)");
  bench->add_option("--algorithms", algorithms, "comma-separated subset of check,uc,bf,ucbf")
      ->capture_default_str();
  bench->add_option("--jobs", jobs, "parallel workers")->capture_default_str();
  bench->add_flag("--force", force, "recompute existing records");
  bench->add_option("--max-k", o.max_k, "maximum induction depth")->capture_default_str();
  bench->add_option("--timeout", o.timeout_ms, "per-query timeout, ms")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : IVK_USAGE;
  }

  char* result = nullptr;
  char* err = nullptr;

  if (check->parsed() || ivc->parsed()) {
    int rc = IVK_OK;
    ivk_model* m = load_model(o.model_path, &rc);
    if (!m) return rc;
    rc = check->parsed() ? ivk_check(m, options_json(o).c_str(), &result, &err)
                         : ivk_ivc(m, options_json(o).c_str(), &result, &err);
    ivk_model_free(m);
    return finish(o, rc, result, err);
  }

  if (slice->parsed()) {
    int rc = IVK_OK;
    ivk_model* m = load_model(o.model_path, &rc);
    if (!m) return rc;
    rc = ivk_slice(m, o.root.empty() ? nullptr : o.root.c_str(), &result, &err);
    ivk_model_free(m);
    if (rc != IVK_OK) {
      std::cerr << "error: " << take(err) << "\n";
      return rc;
    }
    std::string res = take(result);
    if (!o.json_out.empty()) {
      int w = write_file(o.json_out, res + "\n");
      if (w != IVK_OK) return w;
    }
    json j = json::parse(res);
    for (const auto& v : j["slice"]) std::cout << v.get<std::string>() << "\n";
    return IVK_OK;
  }

  if (dump->parsed()) {
    int rc = IVK_OK;
    ivk_model* m = load_model(o.model_path, &rc);
    if (!m) return rc;
    rc = ivk_dump_ts(m, &result, &err);
    ivk_model_free(m);
    if (rc != IVK_OK) {
      std::cerr << "error: " << take(err) << "\n";
      return rc;
    }
    std::cout << take(result);
    return IVK_OK;
  }

  if (diversity->parsed()) {
    int rc = ivk_diversity(records_dir.c_str(), &result, &err);
    if (rc != IVK_OK) {
      std::cerr << "error: " << take(err) << "\n";
      return rc;
    }
    std::string res = take(result);
    if (out_dir.empty()) {
      std::cout << res << "\n";
      return IVK_OK;
    }
    json j = json::parse(res);
    int w = write_file(out_dir + "/diversity.json", j.dump(2) + "\n");
    if (w == IVK_OK) w = write_file(out_dir + "/summary.csv", j["summary_csv"].get<std::string>());
    if (w == IVK_OK)
      w = write_file(out_dir + "/distances.csv", j["distances_csv"].get<std::string>());
    if (w == IVK_OK) std::cerr << "wrote " << out_dir << "/{diversity.json,summary.csv,distances.csv}\n";
    return w;
  }

  if (bench->parsed()) {
    json cfg;
    cfg["corpus_dir"] = corpus_dir;
    cfg["out_dir"] = out_dir;
    json solvers = json::array();
    for (const auto& s : solver_specs) {
      auto eq = s.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --solver expects name=command, got " << s << "\n";
        return IVK_USAGE;
      }
      solvers.push_back({{"name", s.substr(0, eq)}, {"command", s.substr(eq + 1)}});
    }
    if (!solvers.empty()) cfg["solvers"] = solvers;
    std::vector<std::string> algos;
    std::stringstream ss(algorithms);
    std::string a;
    while (std::getline(ss, a, ',')) {
      if (!a.empty()) algos.push_back(a);
    }
    cfg["algorithms"] = algos;
    cfg["max_k"] = o.max_k;
    cfg["timeout_ms"] = o.timeout_ms;
    cfg["jobs"] = jobs;
    cfg["force"] = force;
    int rc = ivk_bench(cfg.dump().c_str(), &result, &err);
    if (rc != IVK_OK) {
      std::cerr << "error: " << take(err) << "\n";
      return rc;
    }
    json j = json::parse(take(result));
    int w = write_file(out_dir + "/summary.csv", j["summary_csv"].get<std::string>());
    if (w == IVK_OK) w = write_file(out_dir + "/summary.json", j["summary"].dump(2) + "\n");
    if (w != IVK_OK) return w;
    std::map<std::string, int> counts;
    for (const auto& r : j["records"]) counts[r["status"].get<std::string>()]++;
    std::cout << j["records"].size() << " records:";
    for (const auto& [k, n] : counts) std::cout << " " << k << "=" << n;
    std::cout << "\n";
    return IVK_OK;
  }

  return IVK_USAGE;
}
