#include "ivckind/transition_system.hpp"

#include "ivckind/diagnostics.hpp"

#include <sstream>

namespace ivck {

namespace {
FP mk(Fm f) { return std::make_shared<Fm>(std::move(f)); }
}

FP fm_bool(bool v) {
  Fm f;
  f.k = Fm::K::BoolLit;
  f.bval = v;
  f.type = Ty::Bool;
  return mk(f);
}
FP fm_int(Int v) {
  Fm f;
  f.k = Fm::K::IntLit;
  f.ival = std::move(v);
  f.type = Ty::Int;
  return mk(f);
}
FP fm_real(Rat v) {
  Fm f;
  f.k = Fm::K::RealLit;
  f.rval = std::move(v);
  f.type = Ty::Real;
  return mk(f);
}
FP fm_var(const std::string& name, bool primed, Ty ty) {
  Fm f;
  f.k = Fm::K::Var;
  f.name = name;
  f.primed = primed;
  f.type = ty;
  return mk(f);
}
FP fm_un(Expr::Op op, FP a) {
  Fm f;
  f.k = Fm::K::Unary;
  f.op = op;
  f.type = op == Expr::Op::Not ? Ty::Bool : a->type;
  f.args = {std::move(a)};
  return mk(f);
}
FP fm_bin(Expr::Op op, FP a, FP b) {
  Fm f;
  f.k = Fm::K::Binary;
  f.op = op;
  switch (op) {
    case Expr::Op::Add: case Expr::Op::Sub: case Expr::Op::Mul:
    case Expr::Op::Div: case Expr::Op::Mod:
      f.type = a->type;
      break;
    default:
      f.type = Ty::Bool;
  }
  f.args = {std::move(a), std::move(b)};
  return mk(f);
}
FP fm_ite(FP c, FP t, FP e) {
  Fm f;
  f.k = Fm::K::Ite;
  f.type = t->type;
  f.args = {std::move(c), std::move(t), std::move(e)};
  return mk(f);
}
FP fm_and(std::vector<FP> conjs) {
  if (conjs.empty()) return fm_bool(true);
  FP acc = conjs[0];
  for (size_t i = 1; i < conjs.size(); ++i)
    acc = fm_bin(Expr::Op::And, acc, conjs[i]);
  return acc;
}

std::string fm_to_smt(const FP& f,
                      const std::function<std::string(const std::string&, bool)>& var_name) {
  std::ostringstream os;
  std::function<void(const FP&)> go = [&](const FP& t) {
    switch (t->k) {
      case Fm::K::BoolLit: os << (t->bval ? "true" : "false"); return;
      case Fm::K::IntLit:
        if (t->ival < 0) os << "(- " << -t->ival << ")";
        else os << t->ival;
        return;
      case Fm::K::RealLit: {
        Int num = numerator(t->rval), den = denominator(t->rval);
        bool neg = num < 0;
        if (neg) { os << "(- "; num = -num; }
        if (den == 1) os << num << ".0";
        else os << "(/ " << num << ".0 " << den << ".0)";
        if (neg) os << ")";
        return;
      }
      case Fm::K::Var: os << var_name(t->name, t->primed); return;
      case Fm::K::Unary:
        os << (t->op == Expr::Op::Not ? "(not " : "(- ");
        go(t->args[0]);
        os << ")";
        return;
      case Fm::K::Ite:
        os << "(ite ";
        go(t->args[0]);
        os << " ";
        go(t->args[1]);
        os << " ";
        go(t->args[2]);
        os << ")";
        return;
      case Fm::K::Binary: {
        const char* op = nullptr;
        switch (t->op) {
          case Expr::Op::Add: op = "+"; break;
          case Expr::Op::Sub: op = "-"; break;
          case Expr::Op::Mul: op = "*"; break;
          case Expr::Op::Div: op = t->args[0]->type == Ty::Int ? "div" : "/"; break;
          case Expr::Op::Mod: op = "mod"; break;
          case Expr::Op::Lt: op = "<"; break;
          case Expr::Op::Le: op = "<="; break;
          case Expr::Op::Gt: op = ">"; break;
          case Expr::Op::Ge: op = ">="; break;
          case Expr::Op::Eq: op = "="; break;
          case Expr::Op::And: op = "and"; break;
          case Expr::Op::Or: op = "or"; break;
          case Expr::Op::Imp: op = "=>"; break;
          default: op = "?";
        }
        os << "(" << op << " ";
        go(t->args[0]);
        os << " ";
        go(t->args[1]);
        os << ")";
        return;
      }
    }
  };
  go(f);
  return os.str();
}

void fm_vars(const FP& f, std::set<std::pair<std::string, bool>>* out) {
  if (f->k == Fm::K::Var) out->emplace(f->name, f->primed);
  for (const auto& a : f->args) fm_vars(a, out);
}

const Conjunct* TransitionSystem::find_conjunct(const std::string& name) const {
  for (const auto& c : conjuncts)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> TransitionSystem::candidate_names() const {
  std::vector<std::string> out;
  for (const auto& c : conjuncts)
    if (c.candidate) out.push_back(c.name);
  return out;
}

std::vector<std::string> TransitionSystem::non_candidate_names() const {
  std::vector<std::string> out;
  for (const auto& c : conjuncts)
    if (!c.candidate) out.push_back(c.name);
  return out;
}

FP TransitionSystem::transition_formula() const {
  std::vector<FP> fs;
  for (const auto& c : conjuncts) fs.push_back(c.formula);
  return fm_and(std::move(fs));
}

namespace {

// Encoding of an equation rhs, evaluated "at the primed step": variables are
// primed, `pre w` reads unprimed w, and `e1 -> e2` tests the UNPRIMED init
// flag (whether the previous state was the pre-initial one).
FP enc_next(const Expr& e) {
  switch (e.k) {
    case Expr::K::BoolLit: return fm_bool(e.bval);
    case Expr::K::IntLit: return fm_int(e.ival);
    case Expr::K::RealLit: return fm_real(e.rval);
    case Expr::K::Var: return fm_var(e.name, true, e.type);
    case Expr::K::Pre: {
      const Expr& w = *e.args[0];
      return fm_var(w.name, false, w.type);
    }
    case Expr::K::Arrow:
      return fm_ite(fm_var(kInitVar, false, Ty::Bool), enc_next(*e.args[0]),
                    enc_next(*e.args[1]));
    case Expr::K::Unary: return fm_un(e.op, enc_next(*e.args[0]));
    case Expr::K::Binary: return fm_bin(e.op, enc_next(*e.args[0]), enc_next(*e.args[1]));
    case Expr::K::Ite:
      return fm_ite(enc_next(*e.args[0]), enc_next(*e.args[1]), enc_next(*e.args[2]));
    case Expr::K::Call:
      fail(DiagKind::TypeError, "lower: node calls must be inlined", e.line, e.col);
  }
  fail(DiagKind::TypeError, "lower: malformed expression", e.line, e.col);
}

// State (single-step) encoding for property formulas: unprimed variables,
// no pre/arrow allowed.
FP enc_state(const Expr& e) {
  switch (e.k) {
    case Expr::K::BoolLit: return fm_bool(e.bval);
    case Expr::K::IntLit: return fm_int(e.ival);
    case Expr::K::RealLit: return fm_real(e.rval);
    case Expr::K::Var: return fm_var(e.name, false, e.type);
    case Expr::K::Unary: return fm_un(e.op, enc_state(*e.args[0]));
    case Expr::K::Binary: return fm_bin(e.op, enc_state(*e.args[0]), enc_state(*e.args[1]));
    case Expr::K::Ite:
      return fm_ite(enc_state(*e.args[0]), enc_state(*e.args[1]), enc_state(*e.args[2]));
    default:
      fail(DiagKind::TypeError, "property expressions must be state predicates", e.line, e.col);
  }
}

}  // namespace

TransitionSystem lower(const Program& p) {
  const Node& n = p.main_node();
  if (p.nodes.size() != 1)
    fail(DiagKind::TypeError, "lower expects a normalized single-node program");

  TransitionSystem ts;
  for (const auto* group : {&n.inputs, &n.outputs, &n.locals})
    for (const auto& [name, ty] : *group) ts.state_vars.emplace_back(name, ty);
  ts.state_vars.emplace_back(kInitVar, Ty::Bool);

  ts.init_pred = fm_var(kInitVar, false, Ty::Bool);

  std::set<std::string> candidates = resolve_ivc_annotations(p);
  std::set<std::string> property_targets(n.properties.begin(), n.properties.end());

  for (const auto& eq : n.equations) {
    FP body = fm_bin(Expr::Op::Eq, fm_var(eq.target, true, eq.rhs->type), enc_next(*eq.rhs));
    bool candidate = candidates.count(eq.target) && !property_targets.count(eq.target);
    ts.conjuncts.push_back(Conjunct{eq.target, body, candidate});
  }
  ts.conjuncts.push_back(
      Conjunct{kInitConjunct, fm_un(Expr::Op::Not, fm_var(kInitVar, true, Ty::Bool)), false});

  for (const auto& prop : n.properties) {
    FP guarded = fm_bin(Expr::Op::Or, fm_var(kInitVar, false, Ty::Bool),
                        fm_var(prop, false, Ty::Bool));
    ts.properties.emplace_back(prop, guarded);
  }
  return ts;
}

TransitionSystem restrict_ts(const TransitionSystem& ts, const std::set<std::string>& keep) {
  for (const auto& name : keep)
    if (!ts.find_conjunct(name))
      fail(DiagKind::UnresolvedIdentifier, "restrict: unknown conjunct '" + name + "'");
  TransitionSystem out;
  out.state_vars = ts.state_vars;
  out.init_pred = ts.init_pred;
  out.properties = ts.properties;
  for (const auto& c : ts.conjuncts)
    if (!c.candidate || keep.count(c.name)) out.conjuncts.push_back(c);
  return out;
}

std::string dump_smt(const TransitionSystem& ts) {
  auto name = [](const std::string& v, bool primed) {
    return primed ? "|" + v + "'|" : "|" + v + "|";
  };
  std::ostringstream os;
  for (const auto& [v, ty] : ts.state_vars) {
    const char* s = ty == Ty::Bool ? "Bool" : ty == Ty::Int ? "Int" : "Real";
    os << "(declare-const |" << v << "| " << s << ")\n";
    os << "(declare-const |" << v << "'| " << s << ")\n";
  }
  os << "(define-fun I () Bool " << fm_to_smt(ts.init_pred, name) << ")\n";
  for (const auto& c : ts.conjuncts)
    os << "; conjunct " << c.name << (c.candidate ? "" : " (non-candidate)") << "\n"
       << "(define-fun |T:" << c.name << "| () Bool " << fm_to_smt(c.formula, name) << ")\n";
  for (const auto& [pn, pf] : ts.properties)
    os << "(define-fun |P:" << pn << "| () Bool " << fm_to_smt(pf, name) << ")\n";
  return os.str();
}

}  // namespace ivck
