#include "solver.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace minismt {

namespace {

TP mk(Term t) { return std::make_shared<Term>(std::move(t)); }

TP mk_const(bool b) {
  Term t;
  t.k = Term::K::Const;
  t.sort = Sort::Bool;
  t.bval = b;
  return mk(t);
}

TP mk_num(Rat r, Sort s) {
  Term t;
  t.k = Term::K::Num;
  t.sort = s;
  t.num = std::move(r);
  return mk(t);
}

TP mk_var(std::string name, Sort s) {
  Term t;
  t.k = Term::K::Var;
  t.sort = s;
  t.name = std::move(name);
  return mk(t);
}

TP mk_app(Term::K k, Sort s, std::vector<TP> args) {
  Term t;
  t.k = k;
  t.sort = s;
  t.args = std::move(args);
  return mk(t);
}

bool is_numeral(const std::string& s) {
  if (s.empty()) return false;
  size_t i = 0;
  bool digit = false, dot = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) digit = true;
    else if (s[i] == '.' && !dot) dot = true;
    else return false;
  }
  return digit;
}

Rat parse_numeral(const std::string& s, bool* is_real) {
  auto dot = s.find('.');
  *is_real = dot != std::string::npos;
  if (dot == std::string::npos) return Rat(Int(s));
  std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
  Int scale = 1;
  for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
  Int num = Int(whole.empty() ? "0" : whole) * scale + Int(frac.empty() ? "0" : frac);
  return Rat(num, scale);
}

std::string sort_name(Sort s) {
  switch (s) {
    case Sort::Bool: return "Bool";
    case Sort::Int: return "Int";
    default: return "Real";
  }
}

// ---------------------------------------------------------------------------
// Linear forms and atoms

struct LinForm {
  std::map<std::string, Rat> coeffs;
  Rat k;
};

LinForm lin_add(LinForm a, const LinForm& b, const Rat& scale) {
  for (const auto& [v, c] : b.coeffs) {
    a.coeffs[v] += scale * c;
    if (a.coeffs[v] == 0) a.coeffs.erase(v);
  }
  a.k += scale * b.k;
  return a;
}

std::string lin_key(const std::map<std::string, Rat>& coeffs) {
  std::ostringstream os;
  for (const auto& [v, c] : coeffs) os << v << '*' << c << ';';
  return os.str();
}

std::string atom_key(const Atom& a) {
  std::ostringstream os;
  os << lin_key(a.coeffs) << static_cast<int>(a.op) << '@' << a.rhs;
  return os.str();
}

// ---------------------------------------------------------------------------
// Theory solver: conjunction of bound constraints and disequalities.

struct BoundC {
  std::map<std::string, Rat> coeffs;
  bool is_lb = false;
  DeltaRat bound;
};

struct Diseq {
  std::map<std::string, Rat> coeffs;
  Rat rhs;
};

struct TheoryModel {
  std::map<std::string, DeltaRat> values;
};

class TheorySolver {
 public:
  TheorySolver(const std::map<std::string, Sort>& sorts, long* budget)
      : sorts_(sorts), budget_(budget) {}

  // Returns true and fills `model` when the conjunction is satisfiable.
  bool feasible(std::vector<BoundC> bounds, const std::vector<Diseq>& diseqs,
                TheoryModel* model) {
    if (--(*budget_) <= 0) throw UnknownError("theory budget exhausted");

    Simplex spx;
    std::map<std::string, int> var_ids;
    std::map<std::string, int> slack_ids;
    auto var_of = [&](const std::string& name) {
      auto it = var_ids.find(name);
      if (it != var_ids.end()) return it->second;
      int id = spx.new_var();
      var_ids.emplace(name, id);
      return id;
    };
    // Touch every variable mentioned anywhere, in sorted order, so ids are
    // deterministic and the model covers all of them.
    for (const auto& b : bounds)
      for (const auto& [v, c] : b.coeffs) var_of(v);
    for (const auto& d : diseqs)
      for (const auto& [v, c] : d.coeffs) var_of(v);

    auto expr_var = [&](const std::map<std::string, Rat>& coeffs) {
      if (coeffs.size() == 1 && coeffs.begin()->second == 1) return var_of(coeffs.begin()->first);
      std::string key = lin_key(coeffs);
      auto it = slack_ids.find(key);
      if (it != slack_ids.end()) return it->second;
      std::vector<std::pair<Rat, int>> combo;
      for (const auto& [v, c] : coeffs) combo.emplace_back(c, var_of(v));
      int id = spx.new_slack(combo);
      slack_ids.emplace(key, id);
      return id;
    };

    for (const auto& b : bounds) {
      int v = expr_var(b.coeffs);
      bool ok = b.is_lb ? spx.assert_lower(v, b.bound) : spx.assert_upper(v, b.bound);
      if (!ok) return false;
    }
    if (!spx.check()) return false;

    // Branch and bound on integer variables.
    for (const auto& [name, id] : var_ids) {
      auto it = sorts_.find(name);
      if (it == sorts_.end() || it->second != Sort::Int) continue;
      DeltaRat val = spx.value(id);
      if (val.d == 0 && ivck::rat_is_integer(val.r)) continue;
      Int fl = ivck::rat_floor(val.r);
      if (val.d < 0 && ivck::rat_is_integer(val.r)) fl -= 1;
      BoundC below{{{name, Rat(1)}}, false, DeltaRat(Rat(fl))};
      BoundC above{{{name, Rat(1)}}, true, DeltaRat(Rat(fl + 1))};
      auto b1 = bounds;
      b1.push_back(below);
      if (feasible(std::move(b1), diseqs, model)) return true;
      auto b2 = bounds;
      b2.push_back(above);
      return feasible(std::move(b2), diseqs, model);
    }

    // Split on violated disequalities.
    auto eval = [&](const std::map<std::string, Rat>& coeffs) {
      DeltaRat acc;
      for (const auto& [v, c] : coeffs) acc = acc + c * spx.value(var_of(v));
      return acc;
    };
    for (const auto& d : diseqs) {
      if (!(eval(d.coeffs) == DeltaRat(d.rhs))) continue;
      bool all_int = true;
      for (const auto& [v, c] : d.coeffs) {
        auto it = sorts_.find(v);
        if (it == sorts_.end() || it->second != Sort::Int || !ivck::rat_is_integer(c))
          all_int = false;
      }
      all_int = all_int && ivck::rat_is_integer(d.rhs);
      BoundC lt{d.coeffs, false,
                all_int ? DeltaRat(d.rhs - 1) : DeltaRat(d.rhs, Rat(-1))};
      BoundC gt{d.coeffs, true,
                all_int ? DeltaRat(d.rhs + 1) : DeltaRat(d.rhs, Rat(1))};
      auto b1 = bounds;
      b1.push_back(lt);
      if (feasible(std::move(b1), diseqs, model)) return true;
      auto b2 = bounds;
      b2.push_back(gt);
      return feasible(std::move(b2), diseqs, model);
    }

    if (model) {
      model->values.clear();
      for (const auto& [name, id] : var_ids) model->values[name] = spx.value(id);
    }
    return true;
  }

 private:
  const std::map<std::string, Sort>& sorts_;
  long* budget_;
};

// Substitutes a concrete epsilon so that all delta-rational constraints stay
// satisfied, yielding plain rational values.
std::map<std::string, Rat> concretize(const TheoryModel& m, const std::vector<BoundC>& bounds,
                                      const std::vector<Diseq>& diseqs) {
  auto value_at = [&](const std::map<std::string, Rat>& coeffs, const Rat& eps) {
    Rat acc = 0;
    for (const auto& [v, c] : coeffs) {
      auto it = m.values.find(v);
      if (it == m.values.end()) continue;
      acc += c * (it->second.r + it->second.d * eps);
    }
    return acc;
  };
  Rat eps(1);
  for (int iter = 0; iter < 256; ++iter) {
    bool ok = true;
    for (const auto& b : bounds) {
      Rat lhs = value_at(b.coeffs, eps);
      Rat bnd = b.bound.r + b.bound.d * eps;
      if (b.is_lb ? lhs < bnd : lhs > bnd) { ok = false; break; }
    }
    if (ok)
      for (const auto& d : diseqs)
        if (value_at(d.coeffs, eps) == d.rhs) { ok = false; break; }
    if (ok) break;
    eps /= 2;
  }
  std::map<std::string, Rat> out;
  for (const auto& [v, dv] : m.values) out[v] = dv.r + dv.d * eps;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsing

Solver::Solver() { frames_.emplace_back(); }

Sort Solver::parse_sort(const Sexpr& s) const {
  if (s.is("Bool")) return Sort::Bool;
  if (s.is("Int")) return Sort::Int;
  if (s.is("Real")) return Sort::Real;
  throw std::runtime_error("unsupported sort: " + s.to_string());
}

std::optional<Sort> Solver::lookup(const std::string& name) const {
  auto it = symbols_.find(name);
  if (it == symbols_.end()) return std::nullopt;
  return it->second;
}

TP Solver::parse_term(const Sexpr& s) const {
  if (s.is_atom) {
    if (s.atom == "true") return mk_const(true);
    if (s.atom == "false") return mk_const(false);
    if (is_numeral(s.atom)) {
      bool real = false;
      Rat r = parse_numeral(s.atom, &real);
      return mk_num(r, real ? Sort::Real : Sort::Int);
    }
    auto sort = lookup(s.atom);
    if (!sort) throw std::runtime_error("unknown symbol: " + s.atom);
    return mk_var(s.atom, *sort);
  }
  if (s.size() == 0) throw std::runtime_error("empty application");
  const std::string& op = s[0].atom;
  std::vector<TP> args;
  for (size_t i = 1; i < s.size(); ++i) args.push_back(parse_term(s[i]));

  auto need = [&](size_t n) {
    if (args.size() != n) throw std::runtime_error("arity mismatch for " + op);
  };
  auto numeric_sort = [&]() {
    for (const auto& a : args)
      if (a->sort == Sort::Real) return Sort::Real;
    return Sort::Int;
  };

  if (op == "not") { need(1); return mk_app(Term::K::Not, Sort::Bool, std::move(args)); }
  if (op == "and") return mk_app(Term::K::And, Sort::Bool, std::move(args));
  if (op == "or") return mk_app(Term::K::Or, Sort::Bool, std::move(args));
  if (op == "=>") return mk_app(Term::K::Imp, Sort::Bool, std::move(args));
  if (op == "xor") { need(2); return mk_app(Term::K::Xor, Sort::Bool, std::move(args)); }
  if (op == "ite") {
    need(3);
    Sort s2 = args[1]->sort;
    return mk_app(Term::K::Ite, s2, std::move(args));
  }
  if (op == "=") {
    if (args.size() < 2) throw std::runtime_error("arity mismatch for =");
    if (args.size() == 2) return mk_app(Term::K::Eq, Sort::Bool, std::move(args));
    std::vector<TP> conj;
    for (size_t i = 0; i + 1 < args.size(); ++i)
      conj.push_back(mk_app(Term::K::Eq, Sort::Bool, {args[i], args[i + 1]}));
    return mk_app(Term::K::And, Sort::Bool, std::move(conj));
  }
  if (op == "distinct") {
    std::vector<TP> conj;
    for (size_t i = 0; i < args.size(); ++i)
      for (size_t j = i + 1; j < args.size(); ++j)
        conj.push_back(mk_app(Term::K::Not, Sort::Bool,
                              {mk_app(Term::K::Eq, Sort::Bool, {args[i], args[j]})}));
    if (conj.size() == 1) return conj[0];
    return mk_app(Term::K::And, Sort::Bool, std::move(conj));
  }
  if (op == "<=") { need(2); return mk_app(Term::K::Le, Sort::Bool, std::move(args)); }
  if (op == "<") { need(2); return mk_app(Term::K::Lt, Sort::Bool, std::move(args)); }
  if (op == ">=") { need(2); return mk_app(Term::K::Ge, Sort::Bool, std::move(args)); }
  if (op == ">") { need(2); return mk_app(Term::K::Gt, Sort::Bool, std::move(args)); }
  if (op == "+") return mk_app(Term::K::Add, numeric_sort(), std::move(args));
  if (op == "*") return mk_app(Term::K::Mul, numeric_sort(), std::move(args));
  if (op == "-") {
    if (args.size() == 1) {
      Sort s2 = args[0]->sort;
      return mk_app(Term::K::Neg, s2, std::move(args));
    }
    return mk_app(Term::K::Sub, numeric_sort(), std::move(args));
  }
  if (op == "/") { need(2); return mk_app(Term::K::Div, Sort::Real, std::move(args)); }
  if (op == "div") { need(2); return mk_app(Term::K::IDiv, Sort::Int, std::move(args)); }
  if (op == "mod") { need(2); return mk_app(Term::K::Mod, Sort::Int, std::move(args)); }
  throw std::runtime_error("unsupported operator: " + op);
}

// ---------------------------------------------------------------------------
// check-sat

namespace {

// Rewrites numeric ite / div / mod into fresh variables plus side constraints
// so the remaining numeric structure is purely linear.
class Lifter {
 public:
  Lifter(std::map<std::string, Sort>& sorts) : sorts_(sorts) {}

  TP lift(const TP& t) {
    switch (t->k) {
      case Term::K::Const:
      case Term::K::Num:
      case Term::K::Var:
        return t;
      case Term::K::Ite: {
        TP c = lift(t->args[0]), a = lift(t->args[1]), b = lift(t->args[2]);
        if (t->sort == Sort::Bool) return mk_app(Term::K::Ite, Sort::Bool, {c, a, b});
        TP f = fresh(t->sort);
        aux.push_back(mk_app(Term::K::Imp, Sort::Bool,
                             {c, mk_app(Term::K::Eq, Sort::Bool, {f, a})}));
        aux.push_back(mk_app(Term::K::Imp, Sort::Bool,
                             {mk_app(Term::K::Not, Sort::Bool, {c}),
                              mk_app(Term::K::Eq, Sort::Bool, {f, b})}));
        return f;
      }
      case Term::K::IDiv:
      case Term::K::Mod: {
        TP a = lift(t->args[0]), d = lift(t->args[1]);
        if (d->k != Term::K::Num || d->num == 0)
          throw std::runtime_error("div/mod requires a nonzero constant divisor");
        TP q = fresh(Sort::Int), r = fresh(Sort::Int);
        // a = d*q + r  with  0 <= r < |d|   (Euclidean semantics)
        aux.push_back(mk_app(
            Term::K::Eq, Sort::Bool,
            {a, mk_app(Term::K::Add, Sort::Int,
                       {mk_app(Term::K::Mul, Sort::Int, {d, q}), r})}));
        aux.push_back(mk_app(Term::K::Le, Sort::Bool, {mk_num(Rat(0), Sort::Int), r}));
        Rat ad = d->num < 0 ? -d->num : d->num;
        aux.push_back(mk_app(Term::K::Lt, Sort::Bool, {r, mk_num(ad, Sort::Int)}));
        return t->k == Term::K::IDiv ? q : r;
      }
      default: {
        std::vector<TP> args;
        for (const auto& a : t->args) args.push_back(lift(a));
        return mk_app(t->k, t->sort, std::move(args));
      }
    }
  }

  std::vector<TP> aux;

 private:
  TP fresh(Sort s) {
    std::string name = ".aux" + std::to_string(counter_++);
    sorts_[name] = s;
    return mk_var(name, s);
  }

  std::map<std::string, Sort>& sorts_;
  int counter_ = 0;
};

LinForm linearize(const TP& t) {
  switch (t->k) {
    case Term::K::Num:
      return {{}, t->num};
    case Term::K::Var:
      return {{{t->name, Rat(1)}}, Rat(0)};
    case Term::K::Add: {
      LinForm acc;
      for (const auto& a : t->args) acc = lin_add(acc, linearize(a), Rat(1));
      return acc;
    }
    case Term::K::Sub: {
      LinForm acc = linearize(t->args[0]);
      for (size_t i = 1; i < t->args.size(); ++i) acc = lin_add(acc, linearize(t->args[i]), Rat(-1));
      return acc;
    }
    case Term::K::Neg:
      return lin_add(LinForm{}, linearize(t->args[0]), Rat(-1));
    case Term::K::Mul: {
      LinForm acc{{}, Rat(1)};
      bool have_vars = false;
      Rat scale(1);
      LinForm var_part;
      for (const auto& a : t->args) {
        LinForm f = linearize(a);
        if (f.coeffs.empty()) {
          scale *= f.k;
        } else if (!have_vars) {
          have_vars = true;
          var_part = std::move(f);
        } else {
          throw std::runtime_error("nonlinear multiplication");
        }
      }
      if (!have_vars) return {{}, scale};
      return lin_add(LinForm{}, var_part, scale);
    }
    case Term::K::Div: {
      LinForm den = linearize(t->args[1]);
      if (!den.coeffs.empty() || den.k == 0)
        throw std::runtime_error("division requires a nonzero constant divisor");
      return lin_add(LinForm{}, linearize(t->args[0]), Rat(1) / den.k);
    }
    default:
      throw std::runtime_error("expected a linear numeric term");
  }
}

// CNF + DPLL(T).
class SatSolver {
 public:
  SatSolver(const std::map<std::string, Sort>& sorts, long* budget)
      : sorts_(sorts), budget_(budget) {
    new_sat_var();                       // var 1: constant true
    clauses_.push_back({true_var()});
  }

  int true_var() const { return 1; }

  int new_sat_var() {
    values_.push_back(0);
    return static_cast<int>(values_.size());
  }

  int var_for_bool(const std::string& name) {
    auto it = bool_vars_.find(name);
    if (it != bool_vars_.end()) return it->second;
    int v = new_sat_var();
    bool_vars_.emplace(name, v);
    return v;
  }

  int var_for_atom(Atom atom) {
    std::string key = atom_key(atom);
    auto it = atom_vars_.find(key);
    if (it != atom_vars_.end()) return it->second;
    int v = new_sat_var();
    atom_vars_.emplace(key, v);
    atoms_[v] = std::move(atom);
    return v;
  }

  // Tseitin encoding; returns a literal equivalent to the formula.
  int encode(const TP& t) {
    switch (t->k) {
      case Term::K::Const:
        return t->bval ? true_var() : -true_var();
      case Term::K::Var:
        return var_for_bool(t->name);
      case Term::K::Not:
        return -encode(t->args[0]);
      case Term::K::And:
      case Term::K::Or: {
        bool is_and = t->k == Term::K::And;
        std::vector<int> lits;
        for (const auto& a : t->args) lits.push_back(encode(a));
        int g = new_sat_var();
        std::vector<int> big{is_and ? g : -g};
        for (int l : lits) {
          clauses_.push_back(is_and ? std::vector<int>{-g, l} : std::vector<int>{g, -l});
          big.push_back(is_and ? -l : l);
        }
        clauses_.push_back(std::move(big));
        return g;
      }
      case Term::K::Imp: {
        // Right-associative chain: a => b => c == a => (b => c).
        int acc = encode(t->args.back());
        for (size_t i = t->args.size() - 1; i-- > 0;) {
          int a = encode(t->args[i]);
          int g = new_sat_var();
          clauses_.push_back({-g, -a, acc});
          clauses_.push_back({g, a});
          clauses_.push_back({g, -acc});
          acc = g;
        }
        return acc;
      }
      case Term::K::Xor: {
        int a = encode(t->args[0]), b = encode(t->args[1]);
        return encode_iff(a, -b);
      }
      case Term::K::Ite: {
        int c = encode(t->args[0]), a = encode(t->args[1]), b = encode(t->args[2]);
        int g = new_sat_var();
        clauses_.push_back({-g, -c, a});
        clauses_.push_back({-g, c, b});
        clauses_.push_back({g, -c, -a});
        clauses_.push_back({g, c, -b});
        return g;
      }
      case Term::K::Eq: {
        if (t->args[0]->sort == Sort::Bool)
          return encode_iff(encode(t->args[0]), encode(t->args[1]));
        return encode_atom(t, Atom::Op::Eq);
      }
      case Term::K::Le:
        return encode_atom(t, Atom::Op::Le);
      case Term::K::Lt:
        return encode_atom(t, Atom::Op::Lt);
      case Term::K::Ge:
        return -encode_atom(t, Atom::Op::Lt);  // a >= b  ==  !(a < b)
      case Term::K::Gt:
        return -encode_atom(t, Atom::Op::Le);  // a > b   ==  !(a <= b)
      default:
        throw std::runtime_error("boolean term expected");
    }
  }

  void assert_lit(int lit) { clauses_.push_back({lit}); }

  bool solve() {
    return dpll(SIZE_MAX);
  }

  std::map<std::string, bool> bool_model() const {
    std::map<std::string, bool> m;
    for (const auto& [name, v] : bool_vars_) m[name] = values_[v - 1] > 0;
    return m;
  }

  std::map<std::string, Rat> num_model() const { return num_model_; }

 private:
  int encode_iff(int a, int b) {
    int g = new_sat_var();
    clauses_.push_back({-g, -a, b});
    clauses_.push_back({-g, a, -b});
    clauses_.push_back({g, a, b});
    clauses_.push_back({g, -a, -b});
    return g;
  }

  int encode_atom(const TP& t, Atom::Op op) {
    LinForm lin = lin_add(linearize(t->args[0]), linearize(t->args[1]), Rat(-1));
    Atom atom;
    atom.rhs = -lin.k;
    atom.coeffs = std::move(lin.coeffs);
    atom.op = op;
    if (atom.coeffs.empty()) {
      bool truth = op == Atom::Op::Le ? Rat(0) <= atom.rhs
                 : op == Atom::Op::Lt ? Rat(0) < atom.rhs
                                      : Rat(0) == atom.rhs;
      return truth ? true_var() : -true_var();
    }
    // Scale to integer coefficients.
    Int lcm_den = 1;
    for (const auto& [v, c] : atom.coeffs) {
      Int d = denominator(c);
      lcm_den = lcm_den / gcd(lcm_den, d) * d;
    }
    if (lcm_den != 1) {
      for (auto& [v, c] : atom.coeffs) c *= Rat(lcm_den);
      atom.rhs *= Rat(lcm_den);
    }
    Int g(0);
    bool ints_only = true;
    for (const auto& [v, c] : atom.coeffs) {
      g = gcd(g, numerator(c));
      auto it = sorts_.find(v);
      if (it == sorts_.end() || it->second != Sort::Int) ints_only = false;
    }
    if (g > 1) {
      for (auto& [v, c] : atom.coeffs) c /= Rat(g);
      atom.rhs /= Rat(g);
    }
    atom.all_int = ints_only;
    if (atom.all_int) {
      // Tighten to integral bounds; Lt becomes Le.
      if (atom.op == Atom::Op::Lt) {
        atom.op = Atom::Op::Le;
        atom.rhs = Rat(ivck::rat_ceil(atom.rhs) - 1);
      } else if (atom.op == Atom::Op::Le && !ivck::rat_is_integer(atom.rhs)) {
        atom.rhs = Rat(ivck::rat_floor(atom.rhs));
      } else if (atom.op == Atom::Op::Eq && !ivck::rat_is_integer(atom.rhs)) {
        return -true_var();
      }
    }
    return var_for_atom(std::move(atom));
  }

  // --- DPLL ---

  bool assigned(int var) const { return values_[var - 1] != 0; }
  bool lit_true(int lit) const {
    int v = values_[std::abs(lit) - 1];
    return lit > 0 ? v > 0 : v < 0;
  }

  bool assign(int lit) {
    int var = std::abs(lit);
    if (assigned(var)) return lit_true(lit);
    values_[var - 1] = lit > 0 ? 1 : -1;
    trail_.push_back(var);
    return true;
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      values_[trail_.back() - 1] = 0;
      trail_.pop_back();
    }
  }

  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t ci = 0; ci < clauses_.size(); ++ci) {
        const auto& cl = clauses_[ci];
        int unassigned_lit = 0;
        int n_unassigned = 0;
        bool sat = false;
        for (int lit : cl) {
          if (!assigned(std::abs(lit))) {
            ++n_unassigned;
            unassigned_lit = lit;
          } else if (lit_true(lit)) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (n_unassigned == 0) return false;
        if (n_unassigned == 1) {
          assign(unassigned_lit);
          changed = true;
        }
      }
    }
    return true;
  }

  std::vector<std::pair<const Atom*, bool>> assigned_theory_lits() const {
    std::vector<std::pair<const Atom*, bool>> lits;
    for (const auto& [v, atom] : atoms_)
      if (assigned(v)) lits.emplace_back(&atom, values_[v - 1] > 0);
    return lits;
  }

  static void atom_to_constraints(const Atom& a, bool sign, std::vector<BoundC>* bounds,
                                  std::vector<Diseq>* diseqs) {
    switch (a.op) {
      case Atom::Op::Le:
        if (sign) bounds->push_back({a.coeffs, false, DeltaRat(a.rhs)});
        else if (a.all_int) bounds->push_back({a.coeffs, true, DeltaRat(a.rhs + 1)});
        else bounds->push_back({a.coeffs, true, DeltaRat(a.rhs, Rat(1))});
        break;
      case Atom::Op::Lt:
        if (sign) bounds->push_back({a.coeffs, false, DeltaRat(a.rhs, Rat(-1))});
        else bounds->push_back({a.coeffs, true, DeltaRat(a.rhs)});
        break;
      case Atom::Op::Eq:
        if (sign) {
          bounds->push_back({a.coeffs, false, DeltaRat(a.rhs)});
          bounds->push_back({a.coeffs, true, DeltaRat(a.rhs)});
        } else {
          diseqs->push_back({a.coeffs, a.rhs});
        }
        break;
    }
  }

  // Checks theory consistency of a literal set; on success optionally keeps
  // the model. Returns feasibility.
  bool lits_feasible(const std::vector<std::pair<const Atom*, bool>>& lits, bool keep_model) {
    std::vector<BoundC> bounds;
    std::vector<Diseq> diseqs;
    for (const auto& [atom, sign] : lits) atom_to_constraints(*atom, sign, &bounds, &diseqs);
    TheorySolver th(sorts_, budget_);
    TheoryModel model;
    if (!th.feasible(bounds, diseqs, &model)) return false;
    if (keep_model) num_model_ = concretize(model, bounds, diseqs);
    return true;
  }

  bool theory_ok() {
    auto lits = assigned_theory_lits();
    if (lits.empty()) return true;
    if (lits_feasible(lits, false)) return true;
    // Conflict: shrink greedily, then learn the blocking clause.
    std::vector<std::pair<const Atom*, bool>> core = lits;
    for (size_t i = 0; i < core.size();) {
      auto probe = core;
      probe.erase(probe.begin() + static_cast<long>(i));
      bool still_infeasible = false;
      try {
        still_infeasible = probe.empty() ? false : !lits_feasible(probe, false);
      } catch (const UnknownError&) {
        still_infeasible = false;  // keep the literal
      }
      if (still_infeasible) core = std::move(probe);
      else ++i;
    }
    std::vector<int> clause;
    for (const auto& [atom, sign] : core) {
      // Find the sat var backing this atom.
      int v = 0;
      for (const auto& [var, a] : atoms_)
        if (&a == atom) { v = var; break; }
      clause.push_back(sign ? -v : v);
    }
    clauses_.push_back(std::move(clause));
    return false;
  }

  size_t assigned_theory_count() const {
    size_t n = 0;
    for (const auto& [v, atom] : atoms_)
      if (assigned(v)) ++n;
    return n;
  }

  bool dpll(size_t parent_theory_count) {
    size_t mark = trail_.size();
    if (!propagate()) {
      undo_to(mark);
      return false;
    }
    // The theory only sees assigned atoms, so re-check only when propagation
    // assigned a new one.
    size_t tc = assigned_theory_count();
    if (tc != parent_theory_count && !theory_ok()) {
      undo_to(mark);
      return false;
    }
    // Branch on a literal from an unsatisfied clause; once every clause is
    // satisfied the remaining variables are don't-cares.
    int branch = 0;
    for (const auto& cl : clauses_) {
      bool sat = false;
      int unassigned_lit = 0;
      for (int lit : cl) {
        if (!assigned(std::abs(lit))) {
          if (unassigned_lit == 0) unassigned_lit = lit;
        } else if (lit_true(lit)) {
          sat = true;
          break;
        }
      }
      if (!sat && unassigned_lit != 0) { branch = unassigned_lit; break; }
    }
    if (branch == 0) {
      // Propositionally satisfied; recompute the theory model to keep it.
      auto lits = assigned_theory_lits();
      if (!lits.empty()) lits_feasible(lits, true);
      else num_model_.clear();
      return true;
    }
    for (int lit : {branch, -branch}) {
      size_t sub = trail_.size();
      if (assign(lit) && dpll(tc)) return true;
      undo_to(sub);
    }
    undo_to(mark);
    return false;
  }

  const std::map<std::string, Sort>& sorts_;
  long* budget_;
  std::vector<std::vector<int>> clauses_;
  std::vector<int8_t> values_;
  std::vector<int> trail_;
  std::map<std::string, int> bool_vars_;
  std::map<std::string, int> atom_vars_;
  std::map<int, Atom> atoms_;
  std::map<std::string, Rat> num_model_;
};

}  // namespace

std::string Solver::check(const std::vector<std::pair<std::string, bool>>& assumptions) {
  last_assumptions_ = assumptions;
  model_bools_.clear();
  model_nums_.clear();

  try {
    std::map<std::string, Sort> sorts = symbols_;
    Lifter lifter(sorts);
    std::vector<TP> work;
    for (const auto& f : frames_)
      for (const auto& a : f.assertions) work.push_back(lifter.lift(a));
    for (auto& a : lifter.aux) work.push_back(a);

    long budget = 2000000;
    SatSolver sat(sorts, &budget);
    for (const auto& t : work) sat.assert_lit(sat.encode(t));
    for (const auto& [name, sign] : assumptions) {
      int v = sat.var_for_bool(name);
      sat.assert_lit(sign ? v : -v);
    }
    if (sat.solve()) {
      model_bools_ = sat.bool_model();
      model_nums_ = sat.num_model();
      last_status_ = "sat";
    } else {
      last_status_ = "unsat";
    }
  } catch (const UnknownError&) {
    last_status_ = "unknown";
  }
  return last_status_;
}

std::string Solver::model_text() const {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& [name, sort] : symbols_) {
    if (!first) os << "\n ";
    first = false;
    os << "(define-fun |" << name << "| () " << sort_name(sort) << " ";
    if (sort == Sort::Bool) {
      auto it = model_bools_.find(name);
      os << ((it != model_bools_.end() && it->second) ? "true" : "false");
    } else {
      Rat v(0);
      auto it = model_nums_.find(name);
      if (it != model_nums_.end()) v = it->second;
      Int num = numerator(v), den = denominator(v);
      bool neg = num < 0;
      if (neg) num = -num;
      std::ostringstream val;
      if (den == 1) {
        if (sort == Sort::Real) val << num << ".0";
        else val << num;
      } else {
        val << "(/ " << num << (sort == Sort::Real ? ".0 " : " ") << den
            << (sort == Sort::Real ? ".0)" : ")");
      }
      if (neg) os << "(- " << val.str() << ")";
      else os << val.str();
    }
    os << ")";
  }
  os << ")";
  return os.str();
}

std::string Solver::execute(const Sexpr& cmd) {
  if (cmd.is_atom) throw std::runtime_error("expected a command list");
  if (cmd.size() == 0) throw std::runtime_error("empty command");
  const std::string& op = cmd[0].atom;
  auto ok = [&]() { return print_success_ ? std::string("success") : std::string(); };

  if (op == "set-option") {
    if (cmd.size() == 3 && cmd[1].is(":print-success")) print_success_ = cmd[2].is("true");
    return ok();
  }
  if (op == "set-logic" || op == "set-info") return ok();
  if (op == "declare-const" || op == "declare-fun") {
    bool is_fun = op == "declare-fun";
    if (is_fun && cmd.size() == 4 && cmd[2].size() != 0)
      throw std::runtime_error("only 0-ary functions are supported");
    const std::string& name = cmd[1].atom;
    Sort sort = parse_sort(cmd[is_fun ? 3 : 2]);
    if (symbols_.count(name)) throw std::runtime_error("symbol already declared: " + name);
    symbols_[name] = sort;
    frames_.back().decls.push_back(name);
    return ok();
  }
  if (op == "define-fun") {
    if (cmd.size() != 5 || cmd[2].size() != 0)
      throw std::runtime_error("only 0-ary define-fun is supported");
    const std::string& name = cmd[1].atom;
    Sort sort = parse_sort(cmd[3]);
    TP body = parse_term(cmd[4]);
    if (symbols_.count(name)) throw std::runtime_error("symbol already declared: " + name);
    symbols_[name] = sort;
    frames_.back().decls.push_back(name);
    frames_.back().assertions.push_back(
        mk_app(Term::K::Eq, Sort::Bool, {mk_var(name, sort), body}));
    return ok();
  }
  if (op == "assert") {
    if (cmd.size() != 2) throw std::runtime_error("assert takes one term");
    TP t = parse_term(cmd[1]);
    if (t->sort != Sort::Bool) throw std::runtime_error("assert expects a Bool term");
    frames_.back().assertions.push_back(t);
    return ok();
  }
  if (op == "push" || op == "pop") {
    long n = cmd.size() >= 2 ? std::stol(cmd[1].atom) : 1;
    for (long i = 0; i < n; ++i) {
      if (op == "push") {
        frames_.emplace_back();
      } else {
        if (frames_.size() <= 1) throw std::runtime_error("pop on empty stack");
        for (const auto& d : frames_.back().decls) symbols_.erase(d);
        frames_.pop_back();
      }
    }
    return ok();
  }
  if (op == "check-sat") return check({});
  if (op == "check-sat-assuming") {
    std::vector<std::pair<std::string, bool>> assumptions;
    for (const auto& lit : cmd[1].items) {
      if (lit.is_atom) assumptions.emplace_back(lit.atom, true);
      else if (lit.size() == 2 && lit[0].is("not")) assumptions.emplace_back(lit[1].atom, false);
      else throw std::runtime_error("bad assumption literal");
      const std::string& name = assumptions.back().first;
      auto s = lookup(name);
      if (!s || *s != Sort::Bool) throw std::runtime_error("assumption must be a Bool symbol");
    }
    return check(assumptions);
  }
  if (op == "get-model") {
    if (last_status_ != "sat") throw std::runtime_error("no model available");
    return model_text();
  }
  if (op == "get-unsat-assumptions") {
    if (last_status_ != "unsat") throw std::runtime_error("last check was not unsat");
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < last_assumptions_.size(); ++i) {
      if (i) os << " ";
      if (!last_assumptions_[i].second) os << "(not |" << last_assumptions_[i].first << "|)";
      else os << "|" << last_assumptions_[i].first << "|";
    }
    os << ")";
    return os.str();
  }
  if (op == "echo") {
    std::string s = cmd[1].atom;
    return s;
  }
  if (op == "reset") {
    frames_.clear();
    frames_.emplace_back();
    symbols_.clear();
    last_status_.clear();
    return ok();
  }
  if (op == "exit") return "\x04";  // sentinel consumed by main
  throw std::runtime_error("unsupported command: " + op);
}

}  // namespace minismt
