#include "ivckind/smt_session.hpp"

#include "sexpr.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ivck {

SolverSpec default_solver() {
  const char* env = std::getenv("IVC_KIND_SOLVER");
  if (env && *env) return SolverSpec{"solver", env};
  return SolverSpec{"minismt", "minismt"};
}

namespace {

std::vector<std::string> split_command(const std::string& cmd) {
  std::vector<std::string> out;
  std::istringstream is(cmd);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

const char* sort_of(Ty ty) {
  switch (ty) {
    case Ty::Bool: return "Bool";
    case Ty::Int: return "Int";
    default: return "Real";
  }
}

// Parses one model value s-expression: numeral, decimal, true/false,
// (- v), (/ a b).
Rat parse_num_value(const Sexpr& v) {
  if (v.is_atom) {
    auto dot = v.atom.find('.');
    if (dot == std::string::npos) return Rat(Int(v.atom));
    std::string frac = v.atom.substr(dot + 1);
    Int scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rat(Int(v.atom.substr(0, dot)) * scale + Int(frac), scale);
  }
  if (v.size() == 2 && v[0].is("-")) return -parse_num_value(v[1]);
  if (v.size() == 3 && v[0].is("/")) return parse_num_value(v[1]) / parse_num_value(v[2]);
  throw SessionError("unparseable model value: " + v.to_string());
}

}  // namespace

Session::Session(const SolverSpec& spec, int timeout_ms, const std::string& dump_path)
    : timeout_ms_(timeout_ms), dump_path_(dump_path) {
  std::vector<std::string> argv = split_command(spec.command);
  if (argv.empty()) throw SessionError("empty solver command");

  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) throw SessionError("pipe() failed");
  pid_t pid = fork();
  if (pid < 0) throw SessionError("fork() failed");
  if (pid == 0) {
    dup2(in_pipe[0], 0);
    dup2(out_pipe[1], 1);
    close(in_pipe[0]); close(in_pipe[1]);
    close(out_pipe[0]); close(out_pipe[1]);
    std::vector<char*> cargv;
    for (auto& a : argv) cargv.push_back(a.data());
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    // exec failed; exit quietly so the parent sees EOF.
    _exit(127);
  }
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  close(in_pipe[0]);
  close(out_pipe[1]);

  try {
    expect_success("(set-option :print-success true)");
    expect_success("(set-option :produce-models true)");
    expect_success("(set-option :produce-unsat-assumptions true)");
    expect_success("(set-logic QF_LIRA)");
    // Capability probe: a 2-assumption unsat query must yield a core.
    expect_success("(push 1)");
    expect_success("(declare-const .probe Int)");
    expect_success("(declare-const .pa Bool)");
    expect_success("(declare-const .pb Bool)");
    expect_success("(assert (=> .pa (> .probe 0)))");
    expect_success("(assert (=> .pb (< .probe 0)))");
    std::string res = request("(check-sat-assuming (.pa .pb))");
    if (res != "unsat") throw SessionError("capability probe returned '" + res + "'");
    std::string core = request("(get-unsat-assumptions)");
    Sexpr parsed = parse_sexpr(core);
    if (parsed.is_atom || parsed.size() == 0)
      throw SessionError("solver lacks usable unsat-assumption support");
    expect_success("(pop 1)");
  } catch (const SessionError&) {
    if (pid_ > 0) { kill(pid_, SIGKILL); waitpid(pid_, nullptr, 0); pid_ = -1; }
    throw;
  }
}

Session::~Session() {
  if (pid_ > 0) {
    // Best effort polite shutdown.
    std::string bye = "(exit)\n";
    ssize_t ignored = write(to_child_, bye.data(), bye.size());
    (void)ignored;
    close(to_child_);
    close(from_child_);
    int status;
    if (waitpid(pid_, &status, WNOHANG) == 0) {
      kill(pid_, SIGKILL);
      waitpid(pid_, &status, 0);
    }
  } else {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
  }
}

std::string Session::read_response() {
  // Accumulate bytes until one balanced s-expression (or bare word line)
  // is complete.
  auto complete = [&]() -> std::optional<std::string> {
    int depth = 0;
    bool in_bars = false, in_quotes = false, seen_any = false;
    size_t start = rdbuf_.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) return std::nullopt;
    for (size_t i = start; i < rdbuf_.size(); ++i) {
      char c = rdbuf_[i];
      if (in_bars) { if (c == '|') in_bars = false; continue; }
      if (in_quotes) { if (c == '"') in_quotes = false; continue; }
      if (c == '|') { in_bars = true; continue; }
      if (c == '"') { in_quotes = true; continue; }
      if (c == '(') { ++depth; seen_any = true; continue; }
      if (c == ')') {
        --depth;
        if (depth == 0) {
          std::string out = rdbuf_.substr(start, i - start + 1);
          rdbuf_.erase(0, i + 1);
          return out;
        }
        continue;
      }
      if (depth == 0 && seen_any) return std::nullopt;  // shouldn't happen
      if (depth == 0) {
        // bare word: runs to end of line
        if (c == '\n') {
          std::string out = rdbuf_.substr(start, i - start);
          rdbuf_.erase(0, i + 1);
          while (!out.empty() && (out.back() == '\r' || out.back() == ' ')) out.pop_back();
          return out;
        }
      }
    }
    return std::nullopt;
  };

  for (;;) {
    if (auto r = complete()) return *r;
    struct pollfd pfd{from_child_, POLLIN, 0};
    int pr = poll(&pfd, 1, timeout_ms_);
    if (pr == 0) {
      kill(pid_, SIGKILL);
      waitpid(pid_, nullptr, 0);
      pid_ = -1;
      throw SessionTimeout("solver query timed out");
    }
    if (pr < 0) throw SessionError("poll() failed");
    char buf[4096];
    ssize_t n = read(from_child_, buf, sizeof buf);
    if (n <= 0) {
      if (pid_ > 0) { waitpid(pid_, nullptr, 0); pid_ = -1; }
      throw SessionError("solver process closed its output");
    }
    rdbuf_.append(buf, static_cast<size_t>(n));
  }
}

std::string Session::request(const std::string& text) {
  if (pid_ <= 0) throw SessionError("session is dead");
  if (!dump_path_.empty()) {
    std::ofstream dump(dump_path_, std::ios::app);
    dump << text << "\n";
  }
  std::string line = text + "\n";
  size_t off = 0;
  while (off < line.size()) {
    ssize_t n = write(to_child_, line.data() + off, line.size() - off);
    if (n <= 0) throw SessionError("write to solver failed");
    off += static_cast<size_t>(n);
  }
  std::string resp = read_response();
  if (resp.rfind("(error", 0) == 0) throw SessionError("solver error: " + resp);
  return resp;
}

void Session::expect_success(const std::string& text) {
  std::string r = request(text);
  if (r != "success") throw SessionError("expected success for '" + text + "', got: " + r);
}

void Session::declare(const std::string& sym, Ty ty) {
  expect_success("(declare-const |" + sym + "| " + sort_of(ty) + ")");
}

void Session::assert_text(const std::string& smt_term) {
  expect_success("(assert " + smt_term + ")");
}

void Session::guard(const std::string& lit, const std::string& smt_term) {
  declare(lit, Ty::Bool);
  assert_text("(=> |" + lit + "| " + smt_term + ")");
}

void Session::push() { expect_success("(push 1)"); }
void Session::pop() { expect_success("(pop 1)"); }

Sat Session::check(const std::vector<std::string>& assumptions) {
  ++queries_;
  std::string cmd;
  if (assumptions.empty()) {
    cmd = "(check-sat)";
  } else {
    cmd = "(check-sat-assuming (";
    for (size_t i = 0; i < assumptions.size(); ++i) {
      if (i) cmd += ' ';
      cmd += "|" + assumptions[i] + "|";
    }
    cmd += "))";
  }
  std::string r = request(cmd);
  if (r == "sat") return Sat::Sat;
  if (r == "unsat") return Sat::Unsat;
  if (r == "unknown") return Sat::Unknown;
  throw SessionError("unexpected check-sat response: " + r);
}

Model Session::model() {
  Sexpr m = parse_sexpr(request("(get-model)"));
  Model out;
  for (const auto& item : m.items) {
    // (define-fun name () Sort value) — some solvers wrap in (model ...).
    if (item.is_atom) continue;
    if (item.size() == 5 && item[0].is("define-fun")) {
      const std::string& name = item[1].atom;
      const Sexpr& val = item[4];
      if (item[3].is("Bool")) out.bools[name] = val.is("true");
      else out.nums[name] = parse_num_value(val);
    }
  }
  return out;
}

std::vector<std::string> Session::unsat_core() {
  Sexpr c = parse_sexpr(request("(get-unsat-assumptions)"));
  std::vector<std::string> out;
  for (const auto& item : c.items) {
    if (item.is_atom) out.push_back(item.atom);
    else if (item.size() == 2 && item[0].is("not")) out.push_back(item[1].atom);
  }
  return out;
}

std::vector<std::string> Session::minimize_core(const std::vector<std::string>& core,
                                                const std::vector<std::string>& fixed) {
  std::vector<std::string> kept = core;
  for (size_t i = 0; i < kept.size();) {
    std::vector<std::string> probe = fixed;
    for (size_t j = 0; j < kept.size(); ++j)
      if (j != i) probe.push_back(kept[j]);
    Sat r = check(probe);
    if (r == Sat::Unsat) kept.erase(kept.begin() + static_cast<long>(i));
    else ++i;  // Sat or Unknown: the element stays
  }
  return kept;
}

}  // namespace ivck
