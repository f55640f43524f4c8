#pragma once

#include "ivckind/ast.hpp"
#include "ivckind/numeric.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ivck {

struct SolverSpec {
  std::string name;     // short label used in reports ("minismt", "z3", ...)
  std::string command;  // executable path + arguments, whitespace-separated
};

// Default spec: $IVC_KIND_SOLVER if set, else "minismt" on PATH.
SolverSpec default_solver();

class SessionError : public std::runtime_error {
 public:
  explicit SessionError(const std::string& w) : std::runtime_error(w) {}
};
class SessionTimeout : public SessionError {
 public:
  explicit SessionTimeout(const std::string& w) : SessionError(w) {}
};

enum class Sat { Sat, Unsat, Unknown };

struct Model {
  std::map<std::string, bool> bools;
  std::map<std::string, Rat> nums;
};

// One solver subprocess speaking SMT-LIB2 over stdin/stdout. Single-threaded
// use; one in-flight command at a time.
class Session {
 public:
  // Opens the process, sets options, probes unsat-assumption support.
  // Throws SessionError on spawn/handshake/capability failure.
  Session(const SolverSpec& spec, int timeout_ms = 60000,
          const std::string& dump_path = "");
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  void declare(const std::string& sym, Ty ty);
  void assert_text(const std::string& smt_term);
  // Declares fresh boolean `lit` and asserts (=> lit φ).
  void guard(const std::string& lit, const std::string& smt_term);
  void push();
  void pop();

  Sat check(const std::vector<std::string>& assumptions = {});
  // After Sat: model of all declared symbols.
  Model model();
  // After Unsat under assumptions: subset sufficient for unsatisfiability
  // (not necessarily minimal).
  std::vector<std::string> unsat_core();
  // Deletion-minimized core: result M is Unsat together with `fixed`, and
  // dropping any single element of M flips to Sat. Iterates in the given
  // order, so earlier elements are dropped first when interchangeable.
  std::vector<std::string> minimize_core(const std::vector<std::string>& core,
                                         const std::vector<std::string>& fixed = {});

  bool alive() const { return pid_ > 0; }
  int query_count() const { return queries_; }

 private:
  std::string request(const std::string& text);  // one command, one response
  void expect_success(const std::string& text);
  std::string read_response();

  int pid_ = -1;
  int to_child_ = -1, from_child_ = -1;
  std::string rdbuf_;
  int timeout_ms_;
  std::string dump_path_;
  int queries_ = 0;
};

}  // namespace ivck
