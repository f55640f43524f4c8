#include "solver.hpp"

#include <iostream>

// Stdin/stdout SMT-LIB2 solver for QF_LIRA with 0-ary symbols only.
// Every response is a single line, flushed immediately, so the process can
// sit behind a pipe-driven session.
int main() {
  minismt::Solver solver;
  std::ios::sync_with_stdio(false);
  for (;;) {
    std::optional<ivck::Sexpr> cmd;
    try {
      cmd = ivck::read_sexpr(std::cin);
    } catch (const std::exception& e) {
      std::cout << "(error \"" << e.what() << "\")" << std::endl;
      return 1;
    }
    if (!cmd) return 0;  // EOF
    try {
      std::string out = solver.execute(*cmd);
      if (out == "\x04") return 0;  // exit command
      if (!out.empty()) std::cout << out << std::endl;
    } catch (const std::exception& e) {
      std::string msg = e.what();
      for (auto& c : msg)
        if (c == '"') c = '\'';
      std::cout << "(error \"" << msg << "\")" << std::endl;
    }
  }
}
