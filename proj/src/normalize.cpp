#include "ivckind/frontend.hpp"
#include "typecheck.hpp"

#include <functional>

namespace ivck {

namespace {

EP clone(const EP& e) { return std::make_shared<Expr>(*e); }

// Renames every variable occurrence through `map` (used when copying a
// callee's body under fresh names).
EP substitute(const EP& e, const std::map<std::string, std::string>& map) {
  EP out = clone(e);
  if (out->k == Expr::K::Var) {
    auto it = map.find(out->name);
    if (it != map.end()) out->name = it->second;
  }
  for (auto& a : out->args) a = substitute(a, map);
  return out;
}

struct Normalizer {
  const Program& prog;
  Node result;            // single flattened node
  int fresh_counter = 0;
  std::vector<std::string> call_stack;

  std::string fresh(const std::string& base) {
    return base + "~" + std::to_string(fresh_counter++);
  }

  void add_local(const std::string& name, Ty ty) { result.locals.emplace_back(name, ty); }

  void add_equation(const std::string& target, EP rhs) {
    result.equations.push_back(Equation{target, std::move(rhs)});
  }

  // Copies `callee`'s equations with all variables renamed fresh, binds its
  // inputs to the (already processed) argument expressions, and returns the
  // variable carrying its single output.
  std::string inline_call(const Node& callee, const std::vector<EP>& args) {
    for (const auto& frame : call_stack)
      if (frame == callee.name)
        fail(DiagKind::RecursiveNode, "node '" + callee.name + "' is recursive");
    call_stack.push_back(callee.name);

    std::string prefix = fresh(callee.name);
    std::map<std::string, std::string> rename;
    auto rename_group = [&](const std::vector<std::pair<std::string, Ty>>& group) {
      for (const auto& [name, ty] : group) {
        std::string nn = prefix + "~" + name;
        rename[name] = nn;
        add_local(nn, ty);
      }
    };
    rename_group(callee.inputs);
    rename_group(callee.outputs);
    rename_group(callee.locals);

    for (size_t i = 0; i < callee.inputs.size(); ++i)
      add_equation(rename.at(callee.inputs[i].first), args[i]);
    for (const auto& eq : callee.equations)
      add_equation(rename.at(eq.target), process(substitute(eq.rhs, rename), true));

    call_stack.pop_back();
    return rename.at(callee.outputs[0].first);
  }

  // Rewrites one expression: inlines calls and pulls non-variable `pre`
  // operands out into fresh equations.
  EP process(const EP& e, bool top) {
    (void)top;
    switch (e->k) {
      case Expr::K::Call: {
        const Node* callee = prog.find_node(e->name);
        std::vector<EP> args;
        for (const auto& a : e->args) args.push_back(process(a, false));
        return expr_var(inline_call(*callee, args));
      }
      case Expr::K::Pre: {
        EP inner = process(e->args[0], false);
        if (inner->k != Expr::K::Var) {
          std::string t = fresh("t");
          add_local(t, inner->type);
          Ty ty = inner->type;
          add_equation(t, std::move(inner));
          inner = expr_var(t);
          inner->type = ty;
        }
        EP out = expr_pre(std::move(inner));
        out->type = e->type;
        return out;
      }
      case Expr::K::Arrow: {
        // Arrows may stay nested; lowering turns any `e1 -> e2` into
        // ite(init, e1, e2), and the interpreter evaluates them in place.
        EP a = process(e->args[0], false);
        EP b = process(e->args[1], false);
        EP arrow = expr_arrow(std::move(a), std::move(b));
        arrow->type = e->type;
        return arrow;
      }
      default: {
        EP out = clone(e);
        for (auto& a : out->args) a = process(a, false);
        return out;
      }
    }
  }
};

}  // namespace

Program normalize(const Program& p) {
  const Node& main = p.main_node();
  Normalizer nz{p};
  nz.result.name = main.name;
  nz.result.inputs = main.inputs;
  nz.result.outputs = main.outputs;
  nz.result.locals = main.locals;
  nz.result.properties = main.properties;
  nz.result.ivc_annotation = main.ivc_annotation;
  nz.result.has_ivc_annotation = main.has_ivc_annotation;
  nz.call_stack.push_back(main.name);
  for (const auto& eq : main.equations)
    nz.add_equation(eq.target, nz.process(eq.rhs, true));

  Program out;
  out.nodes.push_back(std::move(nz.result));
  out.main = out.nodes[0].name;
  // Re-run the checker: it re-annotates types on rewritten expressions and
  // guards against normalization bugs (fresh names are visible to it).
  typecheck(out);
  return out;
}

}  // namespace ivck
