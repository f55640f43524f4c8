#include "ivckind/diagnostics.hpp"

#include <sstream>

namespace ivck {

namespace {
const char* kind_name(DiagKind k) {
  switch (k) {
    case DiagKind::LexError: return "lex error";
    case DiagKind::ParseError: return "parse error";
    case DiagKind::TypeError: return "type error";
    case DiagKind::DuplicateDefinition: return "duplicate definition";
    case DiagKind::UnresolvedIdentifier: return "unresolved identifier";
    case DiagKind::InstantaneousCycle: return "instantaneous cycle";
    case DiagKind::RecursiveNode: return "recursive node";
    case DiagKind::BadAnnotation: return "bad annotation";
  }
  return "error";
}
}  // namespace

std::string Diagnostic::render() const {
  std::ostringstream os;
  if (line > 0) os << line << ':' << col << ": ";
  os << kind_name(kind) << ": " << message;
  return os.str();
}

void fail(DiagKind kind, const std::string& msg, int line, int col) {
  throw DiagError(Diagnostic{kind, msg, line, col});
}

}  // namespace ivck
