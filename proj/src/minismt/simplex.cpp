#include "simplex.hpp"

namespace minismt {

int Simplex::new_var() {
  int v = static_cast<int>(beta_.size());
  beta_.emplace_back();
  lo_.emplace_back();
  hi_.emplace_back();
  basic_of_.push_back(-1);
  return v;
}

int Simplex::new_slack(const std::vector<std::pair<Rat, int>>& combo) {
  int s = new_var();
  Row row;
  DeltaRat val;
  for (const auto& [c, v] : combo) {
    if (c == 0) continue;
    auto it = rows_.find(v);
    if (it != rows_.end()) {
      // v is basic: substitute its row.
      for (const auto& [w, cw] : it->second) {
        row[w] += c * cw;
        if (row[w] == 0) row.erase(w);
      }
    } else {
      row[v] += c;
      if (row[v] == 0) row.erase(v);
    }
    val = val + c * beta_[v];
  }
  rows_[s] = std::move(row);
  basic_of_[s] = s;
  beta_[s] = val;
  return s;
}

bool Simplex::assert_lower(int v, const DeltaRat& b) {
  if (hi_[v] && b > *hi_[v]) return false;
  if (lo_[v] && b <= *lo_[v]) return true;
  lo_[v] = b;
  if (basic_of_[v] < 0 && beta_[v] < b) update_nonbasic(v, b);
  return true;
}

bool Simplex::assert_upper(int v, const DeltaRat& b) {
  if (lo_[v] && b < *lo_[v]) return false;
  if (hi_[v] && b >= *hi_[v]) return true;
  hi_[v] = b;
  if (basic_of_[v] < 0 && beta_[v] > b) update_nonbasic(v, b);
  return true;
}

void Simplex::update_nonbasic(int v, const DeltaRat& b) {
  DeltaRat delta = b - beta_[v];
  for (auto& [basic, row] : rows_) {
    auto it = row.find(v);
    if (it != row.end()) beta_[basic] = beta_[basic] + it->second * delta;
  }
  beta_[v] = b;
}

void Simplex::pivot(int basic, int nonbasic) {
  Row row = std::move(rows_.at(basic));
  rows_.erase(basic);
  Rat a = row.at(nonbasic);
  row.erase(nonbasic);

  // Solve the row for the entering variable.
  Row new_row;
  new_row[basic] = Rat(1) / a;
  for (const auto& [w, cw] : row) new_row[w] = -cw / a;

  for (auto& [b2, r2] : rows_) {
    auto it = r2.find(nonbasic);
    if (it == r2.end()) continue;
    Rat c = it->second;
    r2.erase(it);
    for (const auto& [w, cw] : new_row) {
      r2[w] += c * cw;
      if (r2[w] == 0) r2.erase(w);
    }
  }
  rows_[nonbasic] = std::move(new_row);
  basic_of_[nonbasic] = nonbasic;
  basic_of_[basic] = -1;
}

void Simplex::pivot_and_update(int basic, int nonbasic, const DeltaRat& target) {
  Rat a = rows_.at(basic).at(nonbasic);
  DeltaRat theta = Rat(1) / a * (target - beta_[basic]);
  beta_[basic] = target;
  beta_[nonbasic] = beta_[nonbasic] + theta;
  for (auto& [b2, r2] : rows_) {
    if (b2 == basic) continue;
    auto it = r2.find(nonbasic);
    if (it != r2.end()) beta_[b2] = beta_[b2] + it->second * theta;
  }
  pivot(basic, nonbasic);
}

bool Simplex::check() {
  for (;;) {
    // Bland's rule: smallest violating basic variable.
    int xi = -1;
    bool below = false;
    for (const auto& [b, row] : rows_) {
      if (lo_[b] && beta_[b] < *lo_[b]) {
        if (xi < 0 || b < xi) { xi = b; below = true; }
      } else if (hi_[b] && beta_[b] > *hi_[b]) {
        if (xi < 0 || b < xi) { xi = b; below = false; }
      }
    }
    if (xi < 0) return true;

    const Row& row = rows_.at(xi);
    int xj = -1;
    for (const auto& [v, c] : row) {
      bool ok = below ? (c > 0 ? (!hi_[v] || beta_[v] < *hi_[v]) : (!lo_[v] || beta_[v] > *lo_[v]))
                      : (c > 0 ? (!lo_[v] || beta_[v] > *lo_[v]) : (!hi_[v] || beta_[v] < *hi_[v]));
      if (ok && (xj < 0 || v < xj)) xj = v;
    }
    if (xj < 0) return false;
    pivot_and_update(xi, xj, below ? *lo_[xi] : *hi_[xi]);
  }
}

}  // namespace minismt
