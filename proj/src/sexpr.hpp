#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ivck {

// Minimal s-expression reader for the SMT-LIB2 wire format. Used both by the
// solver subprocess (parsing commands) and the session driver (parsing
// models and unsat-assumption lists).
struct Sexpr {
  bool is_atom = true;
  std::string atom;          // valid when is_atom
  std::vector<Sexpr> items;  // valid when !is_atom

  const Sexpr& operator[](size_t i) const { return items[i]; }
  size_t size() const { return items.size(); }
  bool is(const std::string& s) const { return is_atom && atom == s; }
  std::string to_string() const;
};

// Reads one s-expression (atom or balanced list). Skips whitespace and
// ';' line comments. Returns nullopt on clean EOF; throws on malformed input.
std::optional<Sexpr> read_sexpr(std::istream& in);

// Parses a full string containing exactly one s-expression.
Sexpr parse_sexpr(const std::string& text);

}  // namespace ivck
