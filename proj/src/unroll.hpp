#pragma once

#include "ivckind/smt_session.hpp"
#include "ivckind/transition_system.hpp"

#include <functional>
#include <string>

namespace ivck {

// Helpers for instantiating two-state formulas along an unrolled trace.
// Step-i symbols are named "<chain>v@i"; a formula instantiated at step i
// reads unprimed vars at i and primed vars at i+1.

std::string step_sym(const std::string& chain, const std::string& var, int step);

// Declares all state variables of `ts` at one step.
void declare_step(Session& s, const TransitionSystem& ts, const std::string& chain, int step);

// SMT text of `f` instantiated at `step`.
std::string inst(const FP& f, const std::string& chain, int step);

// Asserts every conjunct (candidates included) between steps `step` and
// `step`+1.
void assert_transition(Session& s, const TransitionSystem& ts, const std::string& chain,
                       int step);

// Evaluates a state formula (no primed vars expected unless lookup handles
// them) against model values.
Value fm_eval(const FP& f, const std::function<Value(const std::string&, bool)>& lookup);

// Conjunction of all property formulas of `ts`.
FP properties_formula(const TransitionSystem& ts);

// Next transcript path under cfg.dump_dir (empty when dumping is off).
struct EngineConfig;
std::string dump_file(const EngineConfig& cfg, const std::string& label);

}  // namespace ivck
