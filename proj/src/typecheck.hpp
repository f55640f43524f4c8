#pragma once

#include "ivckind/ast.hpp"

namespace ivck {

// Validates the whole program and annotates every Expr with its type.
// Throws DiagError on: type errors, duplicate definitions, unresolved
// identifiers, nonlinear arithmetic, non-constant divisors, bad pragmas,
// and instantaneous dependency cycles.
void typecheck(Program& p);

}  // namespace ivck
