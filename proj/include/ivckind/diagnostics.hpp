#pragma once

#include <stdexcept>
#include <string>

namespace ivck {

// Everything the frontend can reject, as a category + position.
enum class DiagKind {
  LexError,
  ParseError,
  TypeError,
  DuplicateDefinition,
  UnresolvedIdentifier,
  InstantaneousCycle,
  RecursiveNode,
  BadAnnotation,
};

struct Diagnostic {
  DiagKind kind;
  std::string message;
  int line = 0;
  int col = 0;

  std::string render() const;
};

class DiagError : public std::runtime_error {
 public:
  explicit DiagError(Diagnostic d) : std::runtime_error(d.render()), diag(std::move(d)) {}
  Diagnostic diag;
};

[[noreturn]] void fail(DiagKind kind, const std::string& msg, int line = 0, int col = 0);

}  // namespace ivck
