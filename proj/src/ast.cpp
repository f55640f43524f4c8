#include "ivckind/ast.hpp"

#include "ivckind/diagnostics.hpp"

#include <sstream>

namespace ivck {

std::string ty_name(Ty t) {
  switch (t) {
    case Ty::Bool: return "bool";
    case Ty::Int: return "int";
    default: return "real";
  }
}

namespace {
EP mk(Expr e) { return std::make_shared<Expr>(std::move(e)); }
}

EP expr_bool(bool v) {
  Expr e;
  e.k = Expr::K::BoolLit;
  e.bval = v;
  return mk(e);
}
EP expr_int(Int v) {
  Expr e;
  e.k = Expr::K::IntLit;
  e.ival = std::move(v);
  return mk(e);
}
EP expr_real(Rat v) {
  Expr e;
  e.k = Expr::K::RealLit;
  e.rval = std::move(v);
  return mk(e);
}
EP expr_var(const std::string& name) {
  Expr e;
  e.k = Expr::K::Var;
  e.name = name;
  return mk(e);
}
EP expr_un(Expr::Op op, EP a) {
  Expr e;
  e.k = Expr::K::Unary;
  e.op = op;
  e.args = {std::move(a)};
  return mk(e);
}
EP expr_bin(Expr::Op op, EP a, EP b) {
  Expr e;
  e.k = Expr::K::Binary;
  e.op = op;
  e.args = {std::move(a), std::move(b)};
  return mk(e);
}
EP expr_ite(EP c, EP t, EP el) {
  Expr e;
  e.k = Expr::K::Ite;
  e.args = {std::move(c), std::move(t), std::move(el)};
  return mk(e);
}
EP expr_pre(EP a) {
  Expr e;
  e.k = Expr::K::Pre;
  e.args = {std::move(a)};
  return mk(e);
}
EP expr_arrow(EP a, EP b) {
  Expr e;
  e.k = Expr::K::Arrow;
  e.args = {std::move(a), std::move(b)};
  return mk(e);
}
EP expr_call(const std::string& callee, std::vector<EP> args) {
  Expr e;
  e.k = Expr::K::Call;
  e.name = callee;
  e.args = std::move(args);
  return mk(e);
}

const Equation* Node::find_equation(const std::string& target) const {
  for (const auto& eq : equations)
    if (eq.target == target) return &eq;
  return nullptr;
}

bool Node::declares(const std::string& n, Ty* ty) const {
  for (const auto* group : {&inputs, &outputs, &locals})
    for (const auto& [name, t] : *group)
      if (name == n) {
        if (ty) *ty = t;
        return true;
      }
  return false;
}

const Node& Program::main_node() const {
  const Node* n = find_node(main);
  if (!n) fail(DiagKind::UnresolvedIdentifier, "main node '" + main + "' not found");
  return *n;
}

const Node* Program::find_node(const std::string& name) const {
  for (const auto& n : nodes)
    if (n.name == name) return &n;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Pretty printer. Parenthesizes by precedence so output reparses identically.

namespace {

int prec_of(const Expr& e) {
  switch (e.k) {
    case Expr::K::Arrow: return 1;
    case Expr::K::Binary:
      switch (e.op) {
        case Expr::Op::Imp: return 2;
        case Expr::Op::Or: return 3;
        case Expr::Op::And: return 4;
        case Expr::Op::Lt: case Expr::Op::Le: case Expr::Op::Gt:
        case Expr::Op::Ge: case Expr::Op::Eq: return 6;
        case Expr::Op::Add: case Expr::Op::Sub: return 7;
        default: return 8;  // * / div mod
      }
    case Expr::K::Unary: return e.op == Expr::Op::Not ? 5 : 9;
    case Expr::K::Pre: return 9;
    case Expr::K::Ite: return 0;
    default: return 10;
  }
}

const char* op_text(Expr::Op op) {
  switch (op) {
    case Expr::Op::Neg: return "-";
    case Expr::Op::Not: return "not";
    case Expr::Op::Add: return "+";
    case Expr::Op::Sub: return "-";
    case Expr::Op::Mul: return "*";
    case Expr::Op::Div: return "/";
    case Expr::Op::Mod: return "mod";
    case Expr::Op::Lt: return "<";
    case Expr::Op::Le: return "<=";
    case Expr::Op::Gt: return ">";
    case Expr::Op::Ge: return ">=";
    case Expr::Op::Eq: return "=";
    case Expr::Op::And: return "and";
    case Expr::Op::Or: return "or";
    case Expr::Op::Imp: return "=>";
  }
  return "?";
}

void print_expr(std::ostream& os, const Expr& e, int min_prec);

void child(std::ostream& os, const Expr& e, int min_prec) {
  bool paren = prec_of(e) < min_prec;
  if (paren) os << '(';
  print_expr(os, e, 0);
  if (paren) os << ')';
}

std::string real_text(const Rat& r) {
  // Exact decimal when the denominator is 10^k-friendly; else a / division.
  Int num = numerator(r), den = denominator(r);
  bool neg = num < 0;
  if (neg) num = -num;
  Int scaled = num, d = den;
  int digits = 0;
  while (d % 10 == 0) { d /= 10; ++digits; }
  while (d % 5 == 0) { d /= 5; scaled *= 2; den *= 2; ++digits; }
  while (d % 2 == 0) { d /= 2; scaled *= 5; den *= 5; ++digits; }
  std::ostringstream os;
  if (neg) os << '-';
  if (d != 1) {
    os << num << ".0 / " << den << ".0";  // non-decimal rational
    return os.str();
  }
  std::ostringstream digs;
  digs << scaled;
  std::string s = digs.str();
  while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
  s.insert(s.end() - digits, 1, '.');
  if (s.back() == '.') s += '0';
  os << s;
  return os.str();
}

void print_expr(std::ostream& os, const Expr& e, int) {
  switch (e.k) {
    case Expr::K::BoolLit: os << (e.bval ? "true" : "false"); return;
    case Expr::K::IntLit: os << e.ival; return;
    case Expr::K::RealLit: os << real_text(e.rval); return;
    case Expr::K::Var: os << e.name; return;
    case Expr::K::Unary: {
      int p = prec_of(e);
      os << op_text(e.op) << (e.op == Expr::Op::Not ? " " : " ");
      child(os, *e.args[0], p + 1);
      return;
    }
    case Expr::K::Pre:
      os << "pre ";
      child(os, *e.args[0], prec_of(e) + 1);
      return;
    case Expr::K::Binary: {
      int p = prec_of(e);
      // All binary operators printed left-associative; require strictly
      // higher precedence on the right to be safe for - and /.
      child(os, *e.args[0], p);
      os << ' ' << op_text(e.op) << ' ';
      child(os, *e.args[1], p + 1);
      return;
    }
    case Expr::K::Arrow:
      child(os, *e.args[0], prec_of(e) + 1);  // right-associative
      os << " -> ";
      child(os, *e.args[1], prec_of(e));
      return;
    case Expr::K::Ite:
      os << "if ";
      print_expr(os, *e.args[0], 0);
      os << " then ";
      print_expr(os, *e.args[1], 0);
      os << " else ";
      child(os, *e.args[2], 1);
      return;
    case Expr::K::Call: {
      os << e.name << '(';
      for (size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << ", ";
        print_expr(os, *e.args[i], 0);
      }
      os << ')';
      return;
    }
  }
}

void print_params(std::ostream& os, const std::vector<std::pair<std::string, Ty>>& ps) {
  for (size_t i = 0; i < ps.size(); ++i) {
    if (i) os << "; ";
    os << ps[i].first << " : " << ty_name(ps[i].second);
  }
}

}  // namespace

std::string pretty_print(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

std::string pretty_print(const Program& p) {
  std::ostringstream os;
  for (const auto& n : p.nodes) {
    os << "node " << n.name << "(";
    print_params(os, n.inputs);
    os << ") returns (";
    print_params(os, n.outputs);
    os << ");\n";
    if (!n.locals.empty()) {
      os << "var ";
      for (const auto& [name, ty] : n.locals) os << name << " : " << ty_name(ty) << "; ";
      os << "\n";
    }
    os << "let\n";
    for (const auto& eq : n.equations)
      os << "  " << eq.target << " = " << pretty_print(*eq.rhs) << ";\n";
    for (const auto& prop : n.properties) os << "  --%PROPERTY " << prop << ";\n";
    if (n.has_ivc_annotation) {
      os << "  --%IVC ";
      for (size_t i = 0; i < n.ivc_annotation.size(); ++i) {
        if (i) os << ", ";
        os << n.ivc_annotation[i];
      }
      os << ";\n";
    }
    os << "tel;\n";
  }
  return os.str();
}

}  // namespace ivck
