#include "unroll.hpp"

#include "ivckind/diagnostics.hpp"

namespace ivck {

std::string step_sym(const std::string& chain, const std::string& var, int step) {
  return chain + var + "@" + std::to_string(step);
}

void declare_step(Session& s, const TransitionSystem& ts, const std::string& chain, int step) {
  for (const auto& [v, ty] : ts.state_vars) s.declare(step_sym(chain, v, step), ty);
}

std::string inst(const FP& f, const std::string& chain, int step) {
  return fm_to_smt(f, [&](const std::string& v, bool primed) {
    return "|" + step_sym(chain, v, primed ? step + 1 : step) + "|";
  });
}

void assert_transition(Session& s, const TransitionSystem& ts, const std::string& chain,
                       int step) {
  for (const auto& c : ts.conjuncts) s.assert_text(inst(c.formula, chain, step));
}

FP properties_formula(const TransitionSystem& ts) {
  std::vector<FP> ps;
  for (const auto& [name, f] : ts.properties) ps.push_back(f);
  return fm_and(std::move(ps));
}

Value fm_eval(const FP& f, const std::function<Value(const std::string&, bool)>& lookup) {
  switch (f->k) {
    case Fm::K::BoolLit: return value_bool(f->bval);
    case Fm::K::IntLit: return value_int(f->ival);
    case Fm::K::RealLit: return value_real(f->rval);
    case Fm::K::Var: return lookup(f->name, f->primed);
    case Fm::K::Ite:
      return fm_eval(f->args[0], lookup).b ? fm_eval(f->args[1], lookup)
                                           : fm_eval(f->args[2], lookup);
    case Fm::K::Unary: {
      Value a = fm_eval(f->args[0], lookup);
      if (f->op == Expr::Op::Not) return value_bool(!a.b);
      a.num = -a.num;
      return a;
    }
    case Fm::K::Binary: {
      switch (f->op) {
        case Expr::Op::And:
          return value_bool(fm_eval(f->args[0], lookup).b && fm_eval(f->args[1], lookup).b);
        case Expr::Op::Or:
          return value_bool(fm_eval(f->args[0], lookup).b || fm_eval(f->args[1], lookup).b);
        case Expr::Op::Imp:
          return value_bool(!fm_eval(f->args[0], lookup).b || fm_eval(f->args[1], lookup).b);
        default: break;
      }
      Value a = fm_eval(f->args[0], lookup), b = fm_eval(f->args[1], lookup);
      switch (f->op) {
        case Expr::Op::Lt: return value_bool(a.num < b.num);
        case Expr::Op::Le: return value_bool(a.num <= b.num);
        case Expr::Op::Gt: return value_bool(a.num > b.num);
        case Expr::Op::Ge: return value_bool(a.num >= b.num);
        case Expr::Op::Eq:
          return value_bool(a.ty == Ty::Bool ? a.b == b.b : a.num == b.num);
        case Expr::Op::Add: a.num += b.num; return a;
        case Expr::Op::Sub: a.num -= b.num; return a;
        case Expr::Op::Mul: a.num *= b.num; return a;
        case Expr::Op::Div:
          if (a.ty == Ty::Int) return value_int(euclid_div(numerator(a.num), numerator(b.num)));
          a.num /= b.num;
          return a;
        case Expr::Op::Mod:
          return value_int(euclid_mod(numerator(a.num), numerator(b.num)));
        default: break;
      }
      break;
    }
  }
  fail(DiagKind::TypeError, "formula evaluation: malformed term");
}

}  // namespace ivck
