#pragma once

#include "ivckind/numeric.hpp"

#include <map>
#include <optional>
#include <vector>

namespace minismt {

using ivck::Rat;

// Rational extended with an infinitesimal component, for strict bounds:
// value r + d*delta where delta is a positive infinitesimal.
struct DeltaRat {
  Rat r;
  Rat d;

  DeltaRat() = default;
  DeltaRat(Rat r_, Rat d_ = Rat(0)) : r(std::move(r_)), d(std::move(d_)) {}

  friend DeltaRat operator+(const DeltaRat& a, const DeltaRat& b) { return {a.r + b.r, a.d + b.d}; }
  friend DeltaRat operator-(const DeltaRat& a, const DeltaRat& b) { return {a.r - b.r, a.d - b.d}; }
  friend DeltaRat operator*(const Rat& c, const DeltaRat& a) { return {c * a.r, c * a.d}; }
  friend bool operator<(const DeltaRat& a, const DeltaRat& b) {
    return a.r != b.r ? a.r < b.r : a.d < b.d;
  }
  friend bool operator>(const DeltaRat& a, const DeltaRat& b) { return b < a; }
  friend bool operator<=(const DeltaRat& a, const DeltaRat& b) { return !(b < a); }
  friend bool operator>=(const DeltaRat& a, const DeltaRat& b) { return !(a < b); }
  friend bool operator==(const DeltaRat& a, const DeltaRat& b) { return a.r == b.r && a.d == b.d; }
};

// General simplex over the rationals with per-variable bounds
// (Dutertre/de Moura style). Built fresh for every theory check; no
// backtracking support needed.
class Simplex {
 public:
  int new_var();

  // Introduces a variable constrained to equal the given linear combination
  // of existing variables.
  int new_slack(const std::vector<std::pair<Rat, int>>& combo);

  // Bound assertions return false on an immediately contradictory bound pair.
  bool assert_lower(int v, const DeltaRat& b);
  bool assert_upper(int v, const DeltaRat& b);

  bool check();

  const DeltaRat& value(int v) const { return beta_[v]; }
  int num_vars() const { return static_cast<int>(beta_.size()); }

 private:
  using Row = std::map<int, Rat>;  // nonbasic var -> coefficient

  void update_nonbasic(int v, const DeltaRat& b);
  void pivot_and_update(int basic, int nonbasic, const DeltaRat& target);
  void pivot(int basic, int nonbasic);

  std::vector<std::optional<DeltaRat>> lo_, hi_;
  std::vector<DeltaRat> beta_;
  std::map<int, Row> rows_;           // basic var -> row
  std::vector<int> basic_of_;         // -1 if nonbasic; else index == itself (presence in rows_)
};

}  // namespace minismt
