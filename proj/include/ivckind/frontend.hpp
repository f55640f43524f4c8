#pragma once

#include "ivckind/ast.hpp"
#include "ivckind/diagnostics.hpp"

#include <map>
#include <optional>
#include <set>

namespace ivck {

// Lex + parse + type check + structural checks (duplicate definitions,
// unresolved identifiers, instantaneous cycles). Throws DiagError.
Program parse(const std::string& source);

// Inlines node calls into the main node, lifts non-variable `pre` operands
// and nested arrows into fresh equations (reserved `~` names), and returns a
// single-node program. Throws DiagError on node recursion.
Program normalize(const Program& p);

// Least set of equation targets transitively referenced from `root`
// (including through `pre`), intersected with defined variables.
std::set<std::string> slice_backward(const Program& p, const std::string& root);

// IVC candidate set of the main node: the --%IVC annotation if present,
// otherwise every defined variable. Throws on unknown names.
std::set<std::string> resolve_ivc_annotations(const Program& p);

// ---------------------------------------------------------------------------
// Reference interpreter (exact arithmetic). Used to validate normalization
// and to replay counterexample traces.

struct Value {
  Ty ty = Ty::Bool;
  bool b = false;
  Rat num;  // Int values kept as integral rationals

  bool operator==(const Value& o) const { return ty == o.ty && b == o.b && num == o.num; }
};

Value value_bool(bool b);
Value value_int(const Int& i);
Value value_real(const Rat& r);

using Step = std::map<std::string, Value>;  // variable -> value at one step

// Runs the main node of a normalized-or-not program on the given input trace.
// `pre` at step 0 reads from `pre_state` when provided, else type-default
// (false / 0). Returns per-step values of every node variable.
std::vector<Step> interpret(const Program& p, const std::vector<Step>& inputs,
                            const Step* pre_state = nullptr);

}  // namespace ivck
