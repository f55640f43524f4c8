#pragma once

#include "../sexpr.hpp"
#include "ivckind/numeric.hpp"
#include "simplex.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace minismt {

using ivck::Int;
using ivck::Rat;
using ivck::Sexpr;

enum class Sort { Bool, Int, Real };

struct Term;
using TP = std::shared_ptr<const Term>;

struct Term {
  enum class K {
    Const,  // bval
    Num,    // num
    Var,    // name
    Not, And, Or, Imp, Iff, Xor, Ite,
    Eq, Le, Lt, Ge, Gt,
    Add, Sub, Neg, Mul, Div, IDiv, Mod
  };
  K k;
  Sort sort = Sort::Bool;
  bool bval = false;
  Rat num;
  std::string name;
  std::vector<TP> args;
};

// A normalized linear atom: sum(coeffs) <op> rhs.
struct Atom {
  enum class Op { Le, Lt, Eq };
  std::map<std::string, Rat> coeffs;
  Op op = Op::Le;
  Rat rhs;
  bool all_int = false;  // every variable is Int and all coefficients integral
};

class UnknownError : public std::runtime_error {
 public:
  explicit UnknownError(const std::string& w) : std::runtime_error(w) {}
};

// One SMT-LIB2 solving context: scoped declarations and assertions,
// re-solved from scratch on every check.
class Solver {
 public:
  Solver();

  // Executes one command; returns the response text ("" when silent).
  std::string execute(const Sexpr& cmd);

 private:
  struct Frame {
    std::vector<std::string> decls;
    std::vector<TP> assertions;
  };

  Sort parse_sort(const Sexpr& s) const;
  TP parse_term(const Sexpr& s) const;
  std::optional<Sort> lookup(const std::string& name) const;

  std::string check(const std::vector<std::pair<std::string, bool>>& assumptions);
  std::string model_text() const;

  std::vector<Frame> frames_;
  std::map<std::string, Sort> symbols_;

  bool print_success_ = false;
  // State of the most recent check.
  std::string last_status_;
  std::vector<std::pair<std::string, bool>> last_assumptions_;
  std::map<std::string, bool> model_bools_;
  std::map<std::string, Rat> model_nums_;
};

}  // namespace minismt
