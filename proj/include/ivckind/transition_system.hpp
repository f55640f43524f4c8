#pragma once

#include "ivckind/ast.hpp"
#include "ivckind/frontend.hpp"

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace ivck {

// Two-state first-order term: the Expr constructors minus pre/arrow/calls,
// with variables marked unprimed (current state) or primed (next state).
struct Fm;
using FP = std::shared_ptr<const Fm>;

struct Fm {
  enum class K { BoolLit, IntLit, RealLit, Var, Unary, Binary, Ite };
  K k;
  Expr::Op op = Expr::Op::Add;
  bool bval = false;
  Int ival;
  Rat rval;
  std::string name;   // Var
  bool primed = false;
  std::vector<FP> args;
  Ty type = Ty::Bool;
};

FP fm_bool(bool v);
FP fm_int(Int v);
FP fm_real(Rat v);
FP fm_var(const std::string& name, bool primed, Ty ty);
FP fm_un(Expr::Op op, FP a);
FP fm_bin(Expr::Op op, FP a, FP b);
FP fm_ite(FP c, FP t, FP e);
FP fm_and(std::vector<FP> conjs);  // true when empty

// Renders the term as an SMT-LIB2 expression; variable names are produced by
// `var_name(name, primed)` so callers control step indexing.
std::string fm_to_smt(const FP& f,
                      const std::function<std::string(const std::string&, bool)>& var_name);

// Variables of a formula as (name, primed) pairs.
void fm_vars(const FP& f, std::set<std::pair<std::string, bool>>* out);

struct Conjunct {
  std::string name;     // equals the defined Lustre variable; "~init" for ¬init'
  FP formula;           // over unprimed + primed vars
  bool candidate;       // participates in IVC search
};

struct TransitionSystem {
  std::vector<std::pair<std::string, Ty>> state_vars;  // includes ("init", bool)
  FP init_pred;                                        // exactly `init`
  std::vector<Conjunct> conjuncts;                     // T_1 .. T_n, source order
  std::vector<std::pair<std::string, FP>> properties;  // over unprimed vars

  const Conjunct* find_conjunct(const std::string& name) const;
  std::vector<std::string> candidate_names() const;
  std::vector<std::string> non_candidate_names() const;
  FP transition_formula() const;  // conjunction of all conjunct formulas
};

// Name of the distinguished init flag and of its ¬init' conjunct.
inline const char* kInitVar = "init";
inline const char* kInitConjunct = "~init";

// Lowers a normalized single-node program to (I, T, P) per the init-flag
// encoding: I = init; equation v = rhs becomes conjunct v' = enc(rhs) with
// `pre w` reading unprimed w and `e1 -> e2` becoming ite(init, e1, e2);
// property p becomes init ∨ p. Conjuncts for ¬init' and for property
// equations are non-candidates, as is anything outside the --%IVC annotation.
TransitionSystem lower(const Program& p);

// Drops candidate conjuncts not in `keep`; non-candidates are always
// retained. State vars and properties are unchanged. Throws on unknown names.
TransitionSystem restrict_ts(const TransitionSystem& ts, const std::set<std::string>& keep);

// Debug dump of (I, T, P) as SMT-LIB2-style s-expressions.
std::string dump_smt(const TransitionSystem& ts);

}  // namespace ivck
