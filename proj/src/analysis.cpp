#include "ivckind/analysis.hpp"

#include "ivckind/diagnostics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ivck {

using nlohmann::json;

Rat jaccard(const Core& a, const Core& b) {
  std::vector<std::string> inter, uni;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
  if (uni.empty()) return Rat(0);
  return Rat(1) - Rat(Int(inter.size()), Int(uni.size()));
}

double PairwiseStats::stdev() const {
  return std::sqrt(static_cast<double>(variance));
}

std::optional<PairwiseStats> pairwise_stats(const std::vector<Core>& cores) {
  if (cores.size() < 2) return std::nullopt;
  std::vector<Rat> ds;
  for (size_t i = 0; i < cores.size(); ++i)
    for (size_t j = i + 1; j < cores.size(); ++j) ds.push_back(jaccard(cores[i], cores[j]));
  PairwiseStats st;
  st.pairs = static_cast<int>(ds.size());
  st.min = st.max = ds[0];
  Rat sum(0);
  for (const auto& d : ds) {
    st.min = std::min(st.min, d);
    st.max = std::max(st.max, d);
    sum += d;
  }
  st.mean = sum / Rat(Int(ds.size()));
  Rat var(0);
  for (const auto& d : ds) var += (d - st.mean) * (d - st.mean);
  st.variance = var / Rat(Int(ds.size()));
  return st;
}

Core core_set(const std::vector<Core>& cores) {
  if (cores.empty()) return {};
  Core acc = cores[0];
  for (size_t i = 1; i < cores.size(); ++i) {
    Core next;
    std::set_intersection(acc.begin(), acc.end(), cores[i].begin(), cores[i].end(),
                          std::inserter(next, next.begin()));
    acc = std::move(next);
  }
  return acc;
}

Rat overall_dissimilarity(const std::vector<Core>& cores) {
  if (cores.empty()) return Rat(0);
  Core cm = core_set(cores);
  Rat sum(0);
  for (const auto& c : cores) sum += jaccard(c, cm);
  return sum / Rat(Int(cores.size()));
}

std::optional<double> overhead_percent(long ivc_ms, long baseline_ms) {
  if (baseline_ms <= 0) return std::nullopt;
  return 100.0 * static_cast<double>(ivc_ms) / static_cast<double>(baseline_ms);
}

// ---------------------------------------------------------------------------
// Theorem-1 gadget

TransitionSystem gadget(const TransitionSystem& base) {
  auto taken = [&](const std::string& n) {
    for (const auto& [v, ty] : base.state_vars)
      if (v == n) return true;
    return false;
  };
  std::string xn = "x", yn = "y";
  while (taken(xn)) xn += "_g";
  while (taken(yn) || yn == xn) yn += "_g";

  FP x = fm_var(xn, false, Ty::Bool);
  FP xp = fm_var(xn, true, Ty::Bool);
  FP yp = fm_var(yn, true, Ty::Bool);

  // P' = base property conjunction with every variable primed.
  std::function<FP(const FP&)> prime = [&](const FP& f) -> FP {
    if (f->k == Fm::K::Var) return fm_var(f->name, true, f->type);
    Fm copy = *f;
    for (auto& a : copy.args) a = prime(a);
    return std::make_shared<Fm>(std::move(copy));
  };
  std::vector<FP> props;
  for (const auto& [pn, pf] : base.properties) props.push_back(pf);
  FP p = fm_and(props);
  FP p_primed = prime(p);

  TransitionSystem out;
  out.state_vars = base.state_vars;
  out.state_vars.emplace_back(xn, Ty::Bool);
  out.state_vars.emplace_back(yn, Ty::Bool);
  out.init_pred = fm_bin(Expr::Op::And, base.init_pred, fm_un(Expr::Op::Not, x));
  out.conjuncts.push_back(Conjunct{"x_implies_y", fm_bin(Expr::Op::Imp, xp, yp), true});
  out.conjuncts.push_back(Conjunct{
      "y_implies_p_and_t",
      fm_bin(Expr::Op::And, fm_bin(Expr::Op::Imp, yp, p_primed), base.transition_formula()),
      true});
  out.properties.emplace_back("wrapped", fm_bin(Expr::Op::Imp, x, p));
  return out;
}

// ---------------------------------------------------------------------------
// Records and reports

std::string RunRecord::to_json() const {
  json j;
  j["model"] = model;
  j["solver"] = solver;
  j["algorithm"] = algorithm;
  j["status"] = status;
  j["core"] = core;
  j["minimal"] = minimal;
  j["k"] = k;
  j["cex_length"] = cex_length;
  j["slice_size"] = slice_size;
  j["proof_ms"] = proof_ms;
  j["ivc_ms"] = ivc_ms;
  j["error"] = error;
  return j.dump(2) + "\n";
}

RunRecord RunRecord::from_json(const std::string& text) {
  json j = json::parse(text);
  RunRecord r;
  r.model = j.at("model").get<std::string>();
  r.solver = j.at("solver").get<std::string>();
  r.algorithm = j.at("algorithm").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.core = j.value("core", std::vector<std::string>{});
  r.minimal = j.value("minimal", false);
  r.k = j.value("k", 0);
  r.cex_length = j.value("cex_length", -1);
  r.slice_size = j.value("slice_size", -1);
  r.proof_ms = j.value("proof_ms", 0L);
  r.ivc_ms = j.value("ivc_ms", 0L);
  r.error = j.value("error", std::string());
  return r;
}

std::string RunRecord::file_name() const {
  return model + "__" + solver + "__" + algorithm + ".json";
}

namespace {
std::string rat_str(const Rat& r) { return rat_to_string(r); }
}

DiversityReport diversity_report(const std::string& model,
                                 const std::vector<RunRecord>& records) {
  DiversityReport rep;
  rep.model = model;
  std::vector<Core> all, no_bf;
  for (const auto& r : records) {
    if (r.model != model || r.status != "proved" || r.algorithm == "check") continue;
    Core c(r.core.begin(), r.core.end());
    rep.cores.emplace_back(r.solver + "/" + r.algorithm, c);
    all.push_back(c);
    if (r.algorithm != "bf") no_bf.push_back(c);
  }
  rep.stats = pairwise_stats(all);
  rep.core = core_set(all);
  rep.dissimilarity = overall_dissimilarity(all);
  rep.dissimilarity_no_bf = overall_dissimilarity(no_bf);
  return rep;
}

std::string DiversityReport::to_json() const {
  json j;
  j["model"] = model;
  json jc = json::array();
  for (const auto& [label, c] : cores) {
    json e;
    e["config"] = label;
    e["core"] = std::vector<std::string>(c.begin(), c.end());
    jc.push_back(e);
  }
  j["cores"] = jc;
  if (stats) {
    j["pairwise"] = {
        {"pairs", stats->pairs},        {"min", rat_str(stats->min)},
        {"max", rat_str(stats->max)},   {"mean", rat_str(stats->mean)},
        {"variance", rat_str(stats->variance)}, {"stdev", stats->stdev()},
    };
  }
  j["core_set"] = std::vector<std::string>(core.begin(), core.end());
  j["dissimilarity"] = rat_str(dissimilarity);
  j["dissimilarity_excluding_bf"] = rat_str(dissimilarity_no_bf);
  return j.dump(2) + "\n";
}

std::string diversity_summary_csv(const std::vector<DiversityReport>& reports) {
  std::ostringstream os;
  os << "model,configs,pairs,min,max,mean,stdev,core_set_size,dissimilarity,"
        "dissimilarity_excluding_bf\n";
  for (const auto& r : reports) {
    os << r.model << ',' << r.cores.size() << ',';
    if (r.stats)
      os << r.stats->pairs << ',' << static_cast<double>(r.stats->min) << ','
         << static_cast<double>(r.stats->max) << ',' << static_cast<double>(r.stats->mean)
         << ',' << r.stats->stdev() << ',';
    else
      os << "0,,,,,";
    os << r.core.size() << ',' << static_cast<double>(r.dissimilarity) << ','
       << static_cast<double>(r.dissimilarity_no_bf) << "\n";
  }
  return os.str();
}

std::string pairwise_distances_csv(const std::vector<DiversityReport>& reports) {
  std::ostringstream os;
  os << "model,config_a,config_b,distance\n";
  for (const auto& r : reports) {
    std::vector<std::pair<std::string, std::string>> rows;  // (distance, line) for ranking
    std::vector<std::pair<Rat, std::string>> ranked;
    for (size_t i = 0; i < r.cores.size(); ++i)
      for (size_t j = i + 1; j < r.cores.size(); ++j) {
        Rat d = jaccard(r.cores[i].second, r.cores[j].second);
        std::ostringstream line;
        line << r.model << ',' << r.cores[i].first << ',' << r.cores[j].first << ','
             << static_cast<double>(d);
        ranked.emplace_back(d, line.str());
      }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [d, line] : ranked) os << line << "\n";
  }
  return os.str();
}

}  // namespace ivck
