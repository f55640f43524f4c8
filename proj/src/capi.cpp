#include "ivc_kind.h"

#include "ivckind/analysis.hpp"
#include "ivckind/bench.hpp"
#include "ivckind/frontend.hpp"
#include "ivckind/induction.hpp"
#include "ivckind/ivc.hpp"
#include "ivckind/transition_system.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <cstring>
#include <string>

using nlohmann::json;
namespace iv = ivck;

struct ivk_model {
  iv::Program normalized;
  iv::TransitionSystem ts;
};

namespace {

char* dup_text(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** err, const std::string& msg) {
  if (err) *err = dup_text(msg);
}

iv::EngineConfig engine_config(const json& opts) {
  iv::EngineConfig cfg;
  cfg.solver = iv::default_solver();
  if (opts.contains("solver")) cfg.solver.command = opts["solver"].get<std::string>();
  if (opts.contains("solver_name")) cfg.solver.name = opts["solver_name"].get<std::string>();
  if (opts.contains("max_k")) cfg.max_k = opts["max_k"].get<int>();
  if (opts.contains("timeout_ms")) cfg.timeout_ms = opts["timeout_ms"].get<int>();
  if (opts.contains("dump_smt")) cfg.dump_dir = opts["dump_smt"].get<std::string>();
  return cfg;
}

json parse_opts(const char* options_json) {
  if (!options_json || !*options_json) return json::object();
  return json::parse(options_json);
}

std::string value_text(const iv::Value& v) {
  if (v.ty == iv::Ty::Bool) return v.b ? "true" : "false";
  return iv::rat_to_string(v.num);
}

json trace_json(const std::vector<iv::Step>& trace) {
  json arr = json::array();
  for (const auto& step : trace) {
    json s = json::object();
    for (const auto& [name, v] : step) s[name] = value_text(v);
    arr.push_back(std::move(s));
  }
  return arr;
}

json ivc_result_json(const iv::IvcResult& r, const std::string& solver) {
  json j;
  j["property"] = r.property;
  j["algorithm"] = r.algorithm;
  j["core"] = r.core;
  j["minimal"] = r.minimal;
  j["k"] = r.k_used;
  j["invariants"] = r.invariants_used;
  j["proof_ms"] = r.proof_ms;
  j["ivc_ms"] = r.ivc_ms;
  j["solver"] = solver;
  return j;
}

template <typename Fn>
int guarded(char** err, Fn&& fn) {
  try {
    return fn();
  } catch (const iv::DiagError& e) {
    set_err(err, e.diag.render());
    return IVK_USAGE;
  } catch (const json::exception& e) {
    set_err(err, std::string("bad JSON: ") + e.what());
    return IVK_USAGE;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return IVK_INTERNAL;
  }
}

}  // namespace

extern "C" {

ivk_model* ivk_model_load(const char* source, char** err) {
  if (!source) {
    set_err(err, "null source");
    return nullptr;
  }
  try {
    auto m = new ivk_model;
    m->normalized = iv::normalize(iv::parse(source));
    m->ts = iv::lower(m->normalized);
    return m;
  } catch (const iv::DiagError& e) {
    set_err(err, e.diag.render());
    return nullptr;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return nullptr;
  }
}

void ivk_model_free(ivk_model* m) { delete m; }
void ivk_string_free(char* s) { std::free(s); }

int ivk_check(const ivk_model* m, const char* options_json, char** result_json, char** err) {
  if (!m || !result_json) {
    set_err(err, "null argument");
    return IVK_USAGE;
  }
  return guarded(err, [&] {
    auto cfg = engine_config(parse_opts(options_json));
    auto out = iv::prove(m->ts, cfg);
    json j;
    if (out.status == iv::ProveOutcome::Status::Proved) {
      j["status"] = "proved";
      j["k"] = out.proof->k;
      json inv = json::array();
      for (const auto& [name, fm] : out.proof->invariants) inv.push_back(name);
      j["invariants"] = inv;
      j["time_ms"] = out.proof->wall_ms;
      *result_json = dup_text(j.dump(2));
      return IVK_OK;
    }
    if (out.status == iv::ProveOutcome::Status::Falsified) {
      j["status"] = "cex";
      j["length"] = out.cex->length;
      // Lustre steps: the trace includes the pre-initial state at index 0.
      j["lustre_length"] = out.cex->length - 1;
      j["trace"] = trace_json(out.cex->trace);
      *result_json = dup_text(j.dump(2));
      return IVK_FALSIFIED;
    }
    j["status"] = "unknown";
    j["reason"] = out.reason;
    *result_json = dup_text(j.dump(2));
    return IVK_UNKNOWN;
  });
}

int ivk_ivc(const ivk_model* m, const char* options_json, char** result_json, char** err) {
  if (!m || !result_json) {
    set_err(err, "null argument");
    return IVK_USAGE;
  }
  return guarded(err, [&] {
    json opts = parse_opts(options_json);
    std::string algo = opts.value("algorithm", "uc");
    if (algo != "uc" && algo != "bf" && algo != "ucbf") {
      set_err(err, "unknown algorithm: " + algo);
      return IVK_USAGE;
    }
    auto cfg = engine_config(opts);
    auto out = iv::prove(m->ts, cfg);
    if (out.status == iv::ProveOutcome::Status::Falsified) {
      json j;
      j["status"] = "cex";
      j["length"] = out.cex->length;
      j["lustre_length"] = out.cex->length - 1;
      j["trace"] = trace_json(out.cex->trace);
      *result_json = dup_text(j.dump(2));
      return IVK_FALSIFIED;
    }
    if (out.status == iv::ProveOutcome::Status::Unknown) {
      json j;
      j["status"] = "unknown";
      j["reason"] = out.reason;
      *result_json = dup_text(j.dump(2));
      return IVK_UNKNOWN;
    }
    iv::IvcResult r;
    if (algo == "uc") r = iv::ivc_uc(m->ts, *out.proof, cfg);
    else if (algo == "bf") r = iv::ivc_bf(m->ts, *out.proof, cfg);
    else r = iv::ivc_ucbf(m->ts, *out.proof, cfg);
    json j = ivc_result_json(r, cfg.solver.name);
    j["status"] = "proved";
    *result_json = dup_text(j.dump(2));
    return IVK_OK;
  });
}

int ivk_slice(const ivk_model* m, const char* root, char** result_json, char** err) {
  if (!m || !result_json) {
    set_err(err, "null argument");
    return IVK_USAGE;
  }
  return guarded(err, [&] {
    const iv::Node& main = m->normalized.main_node();
    std::vector<std::string> roots;
    if (root && *root) {
      roots.push_back(root);
    } else {
      roots = main.properties;
    }
    std::set<std::string> slice;
    for (const auto& r : roots) {
      auto s = iv::slice_backward(m->normalized, r);
      slice.insert(s.begin(), s.end());
    }
    json j;
    j["roots"] = roots;
    j["slice"] = std::vector<std::string>(slice.begin(), slice.end());
    *result_json = dup_text(j.dump(2));
    return IVK_OK;
  });
}

int ivk_dump_ts(const ivk_model* m, char** text, char** err) {
  if (!m || !text) {
    set_err(err, "null argument");
    return IVK_USAGE;
  }
  return guarded(err, [&] {
    *text = dup_text(iv::dump_smt(m->ts));
    return IVK_OK;
  });
}

int ivk_diversity(const char* records_dir, char** result_json, char** err) {
  if (!records_dir || !result_json) {
    set_err(err, "null argument");
    return IVK_USAGE;
  }
  return guarded(err, [&] {
    auto records = iv::load_records(records_dir);
    std::set<std::string> models;
    for (const auto& r : records) models.insert(r.model);
    std::vector<iv::DiversityReport> reports;
    for (const auto& model : models) reports.push_back(iv::diversity_report(model, records));
    json j;
    json arr = json::array();
    for (const auto& rep : reports) arr.push_back(json::parse(rep.to_json()));
    j["models"] = std::move(arr);
    j["summary_csv"] = iv::diversity_summary_csv(reports);
    j["distances_csv"] = iv::pairwise_distances_csv(reports);
    *result_json = dup_text(j.dump(2));
    return IVK_OK;
  });
}

int ivk_bench(const char* config_json, char** result_json, char** err) {
  if (!config_json || !result_json) {
    set_err(err, "null argument");
    return IVK_USAGE;
  }
  return guarded(err, [&] {
    json c = json::parse(config_json);
    iv::BenchConfig cfg;
    cfg.corpus_dir = c.at("corpus_dir").get<std::string>();
    cfg.out_dir = c.at("out_dir").get<std::string>();
    if (c.contains("solvers")) {
      for (const auto& s : c["solvers"]) {
        cfg.solvers.push_back({s.at("name").get<std::string>(), s.at("command").get<std::string>()});
      }
    }
    if (cfg.solvers.empty()) cfg.solvers.push_back(iv::default_solver());
    if (c.contains("algorithms")) {
      cfg.algorithms = c["algorithms"].get<std::vector<std::string>>();
    } else {
      cfg.algorithms = {"check", "uc", "bf", "ucbf"};
    }
    cfg.max_k = c.value("max_k", 20);
    cfg.timeout_ms = c.value("timeout_ms", 60000);
    cfg.jobs = c.value("jobs", 1);
    cfg.force = c.value("force", false);
    auto records = iv::run_matrix(cfg);
    auto summary = iv::summarize(records);
    json j;
    json arr = json::array();
    for (const auto& r : records) arr.push_back(json::parse(r.to_json()));
    j["records"] = std::move(arr);
    j["summary"] = json::parse(summary.json);
    j["summary_csv"] = summary.csv;
    *result_json = dup_text(j.dump(2));
    return IVK_OK;
  });
}

}  // extern "C"
