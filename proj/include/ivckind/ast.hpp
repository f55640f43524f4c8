#pragma once

#include "ivckind/numeric.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace ivck {

enum class Ty { Bool, Int, Real };

std::string ty_name(Ty t);

struct Expr;
using EP = std::shared_ptr<Expr>;

struct Expr {
  enum class K { BoolLit, IntLit, RealLit, Var, Unary, Binary, Ite, Pre, Arrow, Call };
  enum class Op {
    Neg, Not,                                   // unary
    Add, Sub, Mul, Div, Mod,                    // arithmetic (Div doubles as real /)
    Lt, Le, Gt, Ge, Eq,                         // comparison
    And, Or, Imp                                // boolean
  };

  K k;
  Op op = Op::Add;       // Unary/Binary
  bool bval = false;     // BoolLit
  Int ival;              // IntLit
  Rat rval;              // RealLit (exact decimal)
  std::string name;      // Var / Call callee
  std::vector<EP> args;  // operands; Ite is (cond, then, else); Pre is (e); Arrow is (e1, e2)
  int line = 0, col = 0;
  Ty type = Ty::Bool;    // filled in by the type checker
};

EP expr_bool(bool v);
EP expr_int(Int v);
EP expr_real(Rat v);
EP expr_var(const std::string& name);
EP expr_un(Expr::Op op, EP a);
EP expr_bin(Expr::Op op, EP a, EP b);
EP expr_ite(EP c, EP t, EP e);
EP expr_pre(EP a);
EP expr_arrow(EP a, EP b);
EP expr_call(const std::string& callee, std::vector<EP> args);

struct Equation {
  std::string target;
  EP rhs;
  int line = 0, col = 0;
};

struct Node {
  std::string name;
  std::vector<std::pair<std::string, Ty>> inputs;
  std::vector<std::pair<std::string, Ty>> outputs;
  std::vector<std::pair<std::string, Ty>> locals;
  std::vector<Equation> equations;
  std::vector<std::string> properties;      // --%PROPERTY pragmas, in source order
  std::vector<std::string> ivc_annotation;  // --%IVC pragmas, in source order; empty = none
  bool has_ivc_annotation = false;
  int line = 0, col = 0;

  const Equation* find_equation(const std::string& target) const;
  bool declares(const std::string& name, Ty* ty = nullptr) const;
};

struct Program {
  std::vector<Node> nodes;
  std::string main;  // defaults to the last node in the file

  const Node& main_node() const;
  const Node* find_node(const std::string& name) const;
};

// Renders source text that reparses to a structurally equal program.
std::string pretty_print(const Program& p);
std::string pretty_print(const Expr& e);

}  // namespace ivck
