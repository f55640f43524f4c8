#include "typecheck.hpp"

#include "ivckind/diagnostics.hpp"

#include <functional>
#include <map>
#include <set>

namespace ivck {

namespace {

// True when the expression is built only from literals and arithmetic on
// literals (used for divisor and linearity checks).
bool is_constant(const Expr& e) {
  switch (e.k) {
    case Expr::K::BoolLit:
    case Expr::K::IntLit:
    case Expr::K::RealLit:
      return true;
    case Expr::K::Unary:
      return e.op == Expr::Op::Neg && is_constant(*e.args[0]);
    case Expr::K::Binary:
      switch (e.op) {
        case Expr::Op::Add: case Expr::Op::Sub: case Expr::Op::Mul:
          return is_constant(*e.args[0]) && is_constant(*e.args[1]);
        default:
          return false;
      }
    default:
      return false;
  }
}

// Constant value of a numeric constant expression.
Rat const_value(const Expr& e) {
  switch (e.k) {
    case Expr::K::IntLit: return Rat(e.ival);
    case Expr::K::RealLit: return e.rval;
    case Expr::K::Unary: return -const_value(*e.args[0]);
    case Expr::K::Binary: {
      Rat a = const_value(*e.args[0]), b = const_value(*e.args[1]);
      switch (e.op) {
        case Expr::Op::Add: return a + b;
        case Expr::Op::Sub: return a - b;
        default: return a * b;
      }
    }
    default: return Rat(0);
  }
}

struct Checker {
  const Program& prog;
  const Node& node;

  [[noreturn]] void err(DiagKind k, const std::string& msg, const Expr& e) {
    fail(k, msg, e.line, e.col);
  }

  Ty check(Expr& e) {
    Ty t = infer(e);
    e.type = t;
    return t;
  }

  Ty numeric(Expr& e, const char* what) {
    Ty t = check(e);
    if (t == Ty::Bool) err(DiagKind::TypeError, std::string(what) + " expects a numeric operand", e);
    return t;
  }

  Ty same(Expr& a, Expr& b, const Expr& ctx, const char* what) {
    Ty ta = check(a), tb = check(b);
    if (ta != tb)
      err(DiagKind::TypeError,
          std::string(what) + " operand types differ (" + ty_name(ta) + " vs " + ty_name(tb) + ")",
          ctx);
    return ta;
  }

  void boolean(Expr& e, const char* what) {
    if (check(e) != Ty::Bool)
      err(DiagKind::TypeError, std::string(what) + " expects a bool operand", e);
  }

  Ty infer(Expr& e) {
    switch (e.k) {
      case Expr::K::BoolLit: return Ty::Bool;
      case Expr::K::IntLit: return Ty::Int;
      case Expr::K::RealLit: return Ty::Real;
      case Expr::K::Var: {
        Ty t;
        if (!node.declares(e.name, &t))
          err(DiagKind::UnresolvedIdentifier, "unknown variable '" + e.name + "'", e);
        return t;
      }
      case Expr::K::Unary:
        if (e.op == Expr::Op::Not) {
          boolean(*e.args[0], "not");
          return Ty::Bool;
        }
        return numeric(*e.args[0], "unary -");
      case Expr::K::Pre:
        return check(*e.args[0]);
      case Expr::K::Arrow:
        return same(*e.args[0], *e.args[1], e, "->");
      case Expr::K::Ite: {
        boolean(*e.args[0], "if");
        return same(*e.args[1], *e.args[2], e, "if-then-else");
      }
      case Expr::K::Binary:
        switch (e.op) {
          case Expr::Op::And: case Expr::Op::Or: case Expr::Op::Imp:
            boolean(*e.args[0], "boolean operator");
            boolean(*e.args[1], "boolean operator");
            return Ty::Bool;
          case Expr::Op::Lt: case Expr::Op::Le: case Expr::Op::Gt: case Expr::Op::Ge: {
            Ty t = same(*e.args[0], *e.args[1], e, "comparison");
            if (t == Ty::Bool) err(DiagKind::TypeError, "comparison expects numeric operands", e);
            return Ty::Bool;
          }
          case Expr::Op::Eq:
            same(*e.args[0], *e.args[1], e, "=");
            return Ty::Bool;
          case Expr::Op::Add: case Expr::Op::Sub: {
            Ty t = same(*e.args[0], *e.args[1], e, "arithmetic");
            if (t == Ty::Bool) err(DiagKind::TypeError, "arithmetic expects numeric operands", e);
            return t;
          }
          case Expr::Op::Mul: {
            Ty t = same(*e.args[0], *e.args[1], e, "*");
            if (t == Ty::Bool) err(DiagKind::TypeError, "* expects numeric operands", e);
            if (!is_constant(*e.args[0]) && !is_constant(*e.args[1]))
              err(DiagKind::TypeError, "nonlinear multiplication (neither factor constant)", e);
            return t;
          }
          case Expr::Op::Div: case Expr::Op::Mod: {
            Ty t = same(*e.args[0], *e.args[1], e, "division");
            if (t == Ty::Bool) err(DiagKind::TypeError, "division expects numeric operands", e);
            if (e.op == Expr::Op::Mod && t != Ty::Int)
              err(DiagKind::TypeError, "mod expects int operands", e);
            if (!is_constant(*e.args[1]) || const_value(*e.args[1]) == 0)
              err(DiagKind::TypeError, "divisor must be a nonzero constant", e);
            return t;
          }
          default:
            err(DiagKind::TypeError, "malformed expression", e);
        }
      case Expr::K::Call: {
        const Node* callee = prog.find_node(e.name);
        if (!callee) {
          // A stray identifier applied to arguments is most likely a typo'd
          // node name.
          err(DiagKind::UnresolvedIdentifier, "unknown node '" + e.name + "'", e);
        }
        if (callee->outputs.size() != 1)
          err(DiagKind::TypeError,
              "node '" + e.name + "' must have exactly one output to be used in an expression", e);
        if (callee->inputs.size() != e.args.size())
          err(DiagKind::TypeError, "node '" + e.name + "' arity mismatch", e);
        for (size_t i = 0; i < e.args.size(); ++i) {
          Ty t = check(*e.args[i]);
          if (t != callee->inputs[i].second)
            err(DiagKind::TypeError,
                "argument " + std::to_string(i + 1) + " of '" + e.name + "' has type " +
                    ty_name(t) + ", expected " + ty_name(callee->inputs[i].second),
                *e.args[i]);
        }
        return callee->outputs[0].second;
      }
    }
    err(DiagKind::TypeError, "malformed expression", e);
  }
};

// Variables read instantaneously (not under pre). Node-call arguments count:
// the callee's output may depend on any input in the same step.
void instant_deps(const Expr& e, std::set<std::string>* out) {
  switch (e.k) {
    case Expr::K::Var:
      out->insert(e.name);
      return;
    case Expr::K::Pre:
      return;
    default:
      for (const auto& a : e.args) instant_deps(*a, out);
  }
}

void check_cycles(const Node& n) {
  std::map<std::string, std::set<std::string>> deps;
  for (const auto& eq : n.equations) instant_deps(*eq.rhs, &deps[eq.target]);
  // Iterative DFS with tri-color marking.
  std::map<std::string, int> color;  // 0 unvisited, 1 on stack, 2 done
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    auto it = deps.find(v);
    if (it == deps.end()) return;  // input or undefined: no equation to follow
    int& c = color[v];
    if (c == 2) return;
    if (c == 1) {
      const Equation* eq = n.find_equation(v);
      fail(DiagKind::InstantaneousCycle,
           "variable '" + v + "' depends instantaneously on itself",
           eq ? eq->line : 0, eq ? eq->col : 0);
    }
    c = 1;
    for (const auto& w : it->second) visit(w);
    c = 2;
  };
  for (const auto& eq : n.equations) visit(eq.target);
}

void check_node(const Program& p, Node& n) {
  std::set<std::string> declared;
  for (const auto* group : {&n.inputs, &n.outputs, &n.locals})
    for (const auto& [name, ty] : *group)
      if (!declared.insert(name).second)
        fail(DiagKind::DuplicateDefinition, "variable '" + name + "' declared twice", n.line,
             n.col);

  std::set<std::string> defined;
  std::set<std::string> input_names;
  for (const auto& [name, ty] : n.inputs) input_names.insert(name);
  for (const auto& eq : n.equations) {
    if (!declared.count(eq.target))
      fail(DiagKind::UnresolvedIdentifier, "equation defines undeclared variable '" + eq.target + "'",
           eq.line, eq.col);
    if (input_names.count(eq.target))
      fail(DiagKind::TypeError, "input '" + eq.target + "' cannot be defined by an equation",
           eq.line, eq.col);
    if (!defined.insert(eq.target).second)
      fail(DiagKind::DuplicateDefinition, "variable '" + eq.target + "' defined twice", eq.line,
           eq.col);
  }
  for (const auto* group : {&n.outputs, &n.locals})
    for (const auto& [name, ty] : *group)
      if (!defined.count(name))
        fail(DiagKind::TypeError, "variable '" + name + "' has no defining equation", n.line,
             n.col);

  Checker ck{p, n};
  for (auto& eq : n.equations) {
    Ty t = ck.check(*eq.rhs);
    Ty target_ty;
    n.declares(eq.target, &target_ty);
    if (t != target_ty)
      fail(DiagKind::TypeError,
           "equation for '" + eq.target + "' has type " + ty_name(t) + ", expected " +
               ty_name(target_ty),
           eq.line, eq.col);
  }

  for (const auto& prop : n.properties) {
    Ty t;
    if (!n.declares(prop, &t))
      fail(DiagKind::BadAnnotation, "--%PROPERTY names unknown variable '" + prop + "'", n.line,
           n.col);
    if (t != Ty::Bool)
      fail(DiagKind::BadAnnotation, "--%PROPERTY variable '" + prop + "' is not bool", n.line,
           n.col);
  }
  for (const auto& v : n.ivc_annotation)
    if (!defined.count(v))
      fail(DiagKind::BadAnnotation, "--%IVC names variable '" + v + "' with no defining equation",
           n.line, n.col);

  check_cycles(n);
}

}  // namespace

void typecheck(Program& p) {
  std::set<std::string> names;
  for (const auto& n : p.nodes)
    if (!names.insert(n.name).second)
      fail(DiagKind::DuplicateDefinition, "node '" + n.name + "' defined twice", n.line, n.col);
  for (auto& n : p.nodes) check_node(p, n);
}

}  // namespace ivck
