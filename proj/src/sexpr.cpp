#include "sexpr.hpp"

#include <cctype>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace ivck {

std::string Sexpr::to_string() const {
  if (is_atom) return atom;
  std::string out = "(";
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    out += items[i].to_string();
  }
  out += ')';
  return out;
}

namespace {

void skip_ws(std::istream& in) {
  for (;;) {
    int c = in.peek();
    if (c == EOF) return;
    if (c == ';') {
      while (c != EOF && c != '\n') c = in.get();
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    return;
  }
}

std::string read_atom(std::istream& in) {
  std::string s;
  int c = in.peek();
  if (c == '|') {
    in.get();
    while ((c = in.get()) != EOF && c != '|') s += static_cast<char>(c);
    if (c == EOF) throw std::runtime_error("sexpr: unterminated |symbol|");
    return s;
  }
  if (c == '"') {
    s += static_cast<char>(in.get());
    while ((c = in.get()) != EOF) {
      s += static_cast<char>(c);
      if (c == '"') {
        if (in.peek() == '"') s += static_cast<char>(in.get());  // escaped quote
        else break;
      }
    }
    return s;
  }
  while ((c = in.peek()) != EOF && !std::isspace(c) && c != '(' && c != ')' && c != ';')
    s += static_cast<char>(in.get());
  return s;
}

}  // namespace

std::optional<Sexpr> read_sexpr(std::istream& in) {
  skip_ws(in);
  int c = in.peek();
  if (c == EOF) return std::nullopt;
  if (c == ')') throw std::runtime_error("sexpr: unexpected ')'");
  if (c == '(') {
    in.get();
    Sexpr list;
    list.is_atom = false;
    for (;;) {
      skip_ws(in);
      c = in.peek();
      if (c == EOF) throw std::runtime_error("sexpr: unterminated list");
      if (c == ')') {
        in.get();
        return list;
      }
      auto item = read_sexpr(in);
      if (!item) throw std::runtime_error("sexpr: unterminated list");
      list.items.push_back(std::move(*item));
    }
  }
  Sexpr a;
  a.atom = read_atom(in);
  if (a.atom.empty()) throw std::runtime_error("sexpr: empty atom");
  return a;
}

Sexpr parse_sexpr(const std::string& text) {
  std::istringstream in(text);
  auto s = read_sexpr(in);
  if (!s) throw std::runtime_error("sexpr: empty input");
  return *s;
}

}  // namespace ivck
