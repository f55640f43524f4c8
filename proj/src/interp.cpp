#include "ivckind/frontend.hpp"

#include <functional>

namespace ivck {

Value value_bool(bool b) {
  Value v;
  v.ty = Ty::Bool;
  v.b = b;
  return v;
}
Value value_int(const Int& i) {
  Value v;
  v.ty = Ty::Int;
  v.num = Rat(i);
  return v;
}
Value value_real(const Rat& r) {
  Value v;
  v.ty = Ty::Real;
  v.num = r;
  return v;
}

namespace {

Value default_value(Ty ty) {
  switch (ty) {
    case Ty::Bool: return value_bool(false);
    case Ty::Int: return value_int(0);
    default: return value_real(Rat(0));
  }
}

// Evaluates the main node one step at a time. Equations are evaluated on
// demand (memoized per step), which resolves instantaneous dependencies in
// whatever order they need; the frontend already rejected cycles.
struct Interp {
  const Program& prog;
  const Node& node;
  const std::vector<Step>* history;  // fully evaluated earlier steps
  const Step* pre_state;             // optional state before step 0
  size_t index;                      // this step's position
  Step current;
  std::map<std::string, bool> in_flight;

  const Step* prev() const {
    if (index > 0) return &(*history)[index - 1];
    return pre_state;
  }
  bool first_step() const { return index == 0; }

  Value var(const std::string& name) {
    auto it = current.find(name);
    if (it != current.end()) return it->second;
    const Equation* eq = node.find_equation(name);
    if (!eq) fail(DiagKind::UnresolvedIdentifier, "interpreter: no value for '" + name + "'");
    if (in_flight[name])
      fail(DiagKind::InstantaneousCycle, "interpreter: cycle through '" + name + "'");
    in_flight[name] = true;
    Value v = eval(*eq->rhs);
    in_flight[name] = false;
    current[name] = v;
    return v;
  }

  Value prev_value(const std::string& name, Ty ty) {
    if (const Step* p = prev()) {
      auto it = p->find(name);
      if (it != p->end()) return it->second;
    }
    return default_value(ty);
  }

  Value eval(const Expr& e) {
    switch (e.k) {
      case Expr::K::BoolLit: return value_bool(e.bval);
      case Expr::K::IntLit: return value_int(e.ival);
      case Expr::K::RealLit: return value_real(e.rval);
      case Expr::K::Var: return var(e.name);
      case Expr::K::Pre: {
        // Normalized programs have `pre v`; evaluate general operands against
        // the step history anyway so un-normalized programs run too.
        if (e.args[0]->k == Expr::K::Var)
          return prev_value(e.args[0]->name, e.args[0]->type);
        if (index == 0) return default_value(e.type);
        Interp prev_interp{prog, node, history, pre_state, index - 1,
                           (*history)[index - 1], {}};
        return prev_interp.eval(*e.args[0]);
      }
      case Expr::K::Arrow:
        return first_step() ? eval(*e.args[0]) : eval(*e.args[1]);
      case Expr::K::Ite:
        return eval(*e.args[0]).b ? eval(*e.args[1]) : eval(*e.args[2]);
      case Expr::K::Unary: {
        Value a = eval(*e.args[0]);
        if (e.op == Expr::Op::Not) return value_bool(!a.b);
        a.num = -a.num;
        return a;
      }
      case Expr::K::Call: {
        fail(DiagKind::TypeError, "interpreter: node calls must be inlined first");
      }
      case Expr::K::Binary: {
        switch (e.op) {
          case Expr::Op::And: return value_bool(eval(*e.args[0]).b && eval(*e.args[1]).b);
          case Expr::Op::Or: return value_bool(eval(*e.args[0]).b || eval(*e.args[1]).b);
          case Expr::Op::Imp: return value_bool(!eval(*e.args[0]).b || eval(*e.args[1]).b);
          default: break;
        }
        Value a = eval(*e.args[0]), b = eval(*e.args[1]);
        switch (e.op) {
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
            if (a.ty == Ty::Int)
              return value_int(euclid_div(numerator(a.num), numerator(b.num)));
            a.num /= b.num;
            return a;
          case Expr::Op::Mod:
            return value_int(euclid_mod(numerator(a.num), numerator(b.num)));
          default: break;
        }
        fail(DiagKind::TypeError, "interpreter: malformed expression");
      }
    }
    fail(DiagKind::TypeError, "interpreter: malformed expression");
  }
};

}  // namespace

std::vector<Step> interpret(const Program& p, const std::vector<Step>& inputs,
                            const Step* pre_state) {
  const Node& node = p.main_node();
  std::vector<Step> out;
  for (size_t step = 0; step < inputs.size(); ++step) {
    Interp it{p, node, &out, pre_state, step, inputs[step], {}};
    for (const auto& eq : node.equations) it.var(eq.target);
    out.push_back(it.current);
  }
  return out;
}

}  // namespace ivck
