#pragma once

#include "ivckind/numeric.hpp"

#include <string>
#include <vector>

namespace ivck {

enum class Tok {
  Ident, IntLit, RealLit,
  // keywords
  KwNode, KwReturns, KwVar, KwLet, KwTel, KwIf, KwThen, KwElse,
  KwPre, KwNot, KwAnd, KwOr, KwDiv, KwMod, KwTrue, KwFalse,
  KwBool, KwInt, KwReal,
  // punctuation / operators
  LParen, RParen, Semi, Comma, Colon,
  Eq, Lt, Le, Gt, Ge, Plus, Minus, Star, Slash, Arrow, Implies,
  // pragmas (--%PROPERTY / --%IVC); payload tokens follow as normal tokens
  PragmaProperty, PragmaIvc,
  End,
};

struct Token {
  Tok kind;
  std::string text;  // identifier or literal spelling
  Int ival;
  Rat rval;
  int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& source);

}  // namespace ivck
