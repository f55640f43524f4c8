#include "ivckind/bench.hpp"

#include "ivckind/frontend.hpp"
#include "ivckind/ivc.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace ivck {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
  }
  fs::rename(tmp, path);
}

int candidate_slice_size(const Program& normalized, const TransitionSystem& ts) {
  const Node& n = normalized.main_node();
  if (n.properties.empty()) return -1;
  std::set<std::string> slice;
  for (const auto& prop : n.properties) {
    auto s = slice_backward(normalized, prop);
    slice.insert(s.begin(), s.end());
  }
  int count = 0;
  for (const auto& name : ts.candidate_names())
    if (slice.count(name)) ++count;
  return count;
}

}  // namespace

RunRecord run_one(const std::string& model_path, const SolverSpec& solver,
                  const std::string& algorithm, const BenchConfig& cfg) {
  RunRecord rec;
  rec.model = fs::path(model_path).stem().string();
  rec.solver = solver.name;
  rec.algorithm = algorithm;
  try {
    Program p = normalize(parse(read_file(model_path)));
    if (p.main_node().properties.empty())
      throw std::runtime_error("model declares no --%PROPERTY");
    TransitionSystem ts = lower(p);
    rec.slice_size = candidate_slice_size(p, ts);

    EngineConfig ecfg;
    ecfg.solver = solver;
    ecfg.max_k = cfg.max_k;
    ecfg.timeout_ms = cfg.timeout_ms;

    ProveOutcome out = prove(ts, ecfg);
    switch (out.status) {
      case ProveOutcome::Status::Falsified:
        rec.status = "cex";
        rec.cex_length = out.cex->length;
        rec.ivc_ms = 0;  // no IVC work for invalid properties
        return rec;
      case ProveOutcome::Status::Unknown:
        rec.status = "unknown";
        rec.error = out.reason;
        return rec;
      case ProveOutcome::Status::Proved:
        break;
    }
    rec.status = "proved";
    rec.k = out.proof->k;
    rec.proof_ms = out.proof->wall_ms;
    if (algorithm != "check") {
      IvcResult ivc;
      if (algorithm == "uc") ivc = ivc_uc(ts, *out.proof, ecfg);
      else if (algorithm == "bf") ivc = ivc_bf(ts, *out.proof, ecfg);
      else if (algorithm == "ucbf") ivc = ivc_ucbf(ts, *out.proof, ecfg);
      else throw std::runtime_error("unknown algorithm '" + algorithm + "'");
      rec.core = ivc.core;
      rec.minimal = ivc.minimal;
      rec.k = ivc.k_used;
      rec.ivc_ms = ivc.ivc_ms;
    }
    return rec;
  } catch (const std::exception& e) {
    rec.status = "error";
    rec.error = e.what();
    return rec;
  }
}

std::vector<RunRecord> load_records(const std::string& dir) {
  std::vector<RunRecord> out;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.push_back(RunRecord::from_json(read_file(f.string())));
  return out;
}

std::vector<RunRecord> run_matrix(const BenchConfig& cfg) {
  std::vector<fs::path> models;
  for (const auto& entry : fs::directory_iterator(cfg.corpus_dir))
    if (entry.path().extension() == ".lus") models.push_back(entry.path());
  std::sort(models.begin(), models.end());

  fs::create_directories(cfg.out_dir);

  struct Task {
    fs::path model;
    const SolverSpec* solver;
    const std::string* algorithm;
  };
  std::vector<Task> tasks;
  for (const auto& m : models)
    for (const auto& s : cfg.solvers)
      for (const auto& a : cfg.algorithms) tasks.push_back({m, &s, &a});

  std::vector<RunRecord> records(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      RunRecord probe;
      probe.model = t.model.stem().string();
      probe.solver = t.solver->name;
      probe.algorithm = *t.algorithm;
      fs::path rec_path = fs::path(cfg.out_dir) / probe.file_name();
      if (!cfg.force && fs::exists(rec_path)) {
        try {
          records[i] = RunRecord::from_json(read_file(rec_path.string()));
          continue;
        } catch (const std::exception&) {
          // unreadable record: recompute below
        }
      }
      RunRecord rec = run_one(t.model.string(), *t.solver, *t.algorithm, cfg);
      write_atomic(rec_path, rec.to_json());
      records[i] = std::move(rec);
    }
  };

  int jobs = std::max(1, cfg.jobs);
  std::vector<std::thread> pool;
  for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.model, a.solver, a.algorithm) < std::tie(b.model, b.solver, b.algorithm);
  });
  return records;
}

namespace {

struct Agg {
  std::vector<double> xs;
  void add(double x) { xs.push_back(x); }
  bool empty() const { return xs.empty(); }
  double min() const { return *std::min_element(xs.begin(), xs.end()); }
  double max() const { return *std::max_element(xs.begin(), xs.end()); }
  double mean() const {
    double s = 0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
  }
  double stdev() const {
    double m = mean(), v = 0;
    for (double x : xs) v += (x - m) * (x - m);
    return std::sqrt(v / static_cast<double>(xs.size()));
  }
  json to_json() const {
    if (empty()) return nullptr;
    return json{{"n", xs.size()}, {"min", min()}, {"max", max()},
                {"mean", mean()}, {"stdev", stdev()}};
  }
};

}  // namespace

Summary summarize(const std::vector<RunRecord>& records) {
  // Per-solver proof runtimes and per-(solver, algorithm) overheads.
  std::map<std::string, Agg> proof_times;
  std::map<std::string, Agg> overheads;
  // UC vs UCBF core sizes per (model, solver).
  std::map<std::pair<std::string, std::string>, std::pair<int, int>> sizes;  // (uc, ucbf)
  Agg size_increase, slice_ratio;
  std::map<std::string, int> status_counts;

  for (const auto& r : records) {
    ++status_counts[r.status];
    if (r.status != "proved") continue;
    proof_times[r.solver].add(static_cast<double>(r.proof_ms));
    if (r.algorithm != "check") {
      if (auto oh = overhead_percent(r.ivc_ms, r.proof_ms))
        overheads[r.solver + "/" + r.algorithm].add(*oh);
      if (r.slice_size >= 0 && !r.core.empty())
        slice_ratio.add(100.0 * r.slice_size / static_cast<double>(r.core.size()));
    }
    if (r.algorithm == "uc") sizes[{r.model, r.solver}].first = static_cast<int>(r.core.size());
    if (r.algorithm == "ucbf")
      sizes[{r.model, r.solver}].second = static_cast<int>(r.core.size());
  }
  for (const auto& [key, sz] : sizes)
    if (sz.first > 0 && sz.second > 0)
      size_increase.add(100.0 * (sz.first - sz.second) / static_cast<double>(sz.second));

  json j;
  j["statuses"] = status_counts;
  json jt = json::object();
  for (const auto& [solver, agg] : proof_times) jt[solver] = agg.to_json();
  j["proof_ms"] = jt;
  json jo = json::object();
  for (const auto& [cfg, agg] : overheads) jo[cfg] = agg.to_json();
  j["overhead_percent"] = jo;
  j["uc_vs_ucbf_size_increase_percent"] = size_increase.to_json();
  j["slice_vs_ivc_size_percent"] = slice_ratio.to_json();

  std::ostringstream csv;
  csv << "table,key,n,min,max,mean,stdev\n";
  auto row = [&](const std::string& table, const std::string& key, const Agg& a) {
    if (a.empty()) return;
    csv << table << ',' << key << ',' << a.xs.size() << ',' << a.min() << ',' << a.max()
        << ',' << a.mean() << ',' << a.stdev() << "\n";
  };
  for (const auto& [solver, agg] : proof_times) row("proof_ms", solver, agg);
  for (const auto& [cfg, agg] : overheads) row("overhead_percent", cfg, agg);
  row("uc_vs_ucbf_size_increase_percent", "all", size_increase);
  row("slice_vs_ivc_size_percent", "all", slice_ratio);

  return Summary{csv.str(), j.dump(2) + "\n"};
}

}  // namespace ivck
