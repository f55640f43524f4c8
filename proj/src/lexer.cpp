#include "lexer.hpp"

#include "ivckind/diagnostics.hpp"

#include <cctype>
#include <map>

namespace ivck {

namespace {

const std::map<std::string, Tok> kKeywords = {
    {"node", Tok::KwNode}, {"returns", Tok::KwReturns}, {"var", Tok::KwVar},
    {"let", Tok::KwLet},   {"tel", Tok::KwTel},         {"if", Tok::KwIf},
    {"then", Tok::KwThen}, {"else", Tok::KwElse},       {"pre", Tok::KwPre},
    {"not", Tok::KwNot},   {"and", Tok::KwAnd},         {"or", Tok::KwOr},
    {"div", Tok::KwDiv},   {"mod", Tok::KwMod},         {"true", Tok::KwTrue},
    {"false", Tok::KwFalse}, {"bool", Tok::KwBool},     {"int", Tok::KwInt},
    {"real", Tok::KwReal},
};

struct Lexer {
  const std::string& src;
  size_t i = 0;
  int line = 1, col = 1;

  int peek(int ahead = 0) const {
    return i + ahead < src.size() ? static_cast<unsigned char>(src[i + ahead]) : -1;
  }
  int get() {
    if (i >= src.size()) return -1;
    char c = src[i++];
    if (c == '\n') { ++line; col = 1; }
    else ++col;
    return static_cast<unsigned char>(c);
  }

  Token make(Tok k, std::string text, int l, int c) {
    Token t;
    t.kind = k;
    t.text = std::move(text);
    t.line = l;
    t.col = c;
    return t;
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      // whitespace and comments
      for (;;) {
        int c = peek();
        if (c == -1) break;
        if (std::isspace(c)) { get(); continue; }
        if (c == '-' && peek(1) == '-') {
          if (peek(2) == '%') break;  // pragma, handled below
          while (peek() != -1 && peek() != '\n') get();
          continue;
        }
        if (c == '/' && peek(1) == '*') {
          int l = line, cc = col;
          get(); get();
          while (!(peek() == '*' && peek(1) == '/')) {
            if (peek() == -1) fail(DiagKind::LexError, "unterminated comment", l, cc);
            get();
          }
          get(); get();
          continue;
        }
        break;
      }
      int l = line, c0 = col;
      int c = peek();
      if (c == -1) {
        out.push_back(make(Tok::End, "", l, c0));
        return out;
      }
      if (c == '-' && peek(1) == '-' && peek(2) == '%') {
        get(); get(); get();
        std::string word;
        while (std::isalpha(peek())) word += static_cast<char>(get());
        if (word == "PROPERTY") out.push_back(make(Tok::PragmaProperty, word, l, c0));
        else if (word == "IVC") out.push_back(make(Tok::PragmaIvc, word, l, c0));
        else fail(DiagKind::LexError, "unknown pragma --%" + word, l, c0);
        continue;
      }
      if (std::isalpha(c) || c == '_') {
        std::string s;
        while (std::isalnum(peek()) || peek() == '_') s += static_cast<char>(get());
        if (peek() == '~')
          fail(DiagKind::LexError, "'~' is reserved for generated names", line, col);
        auto kw = kKeywords.find(s);
        if (kw != kKeywords.end()) out.push_back(make(kw->second, s, l, c0));
        else out.push_back(make(Tok::Ident, s, l, c0));
        continue;
      }
      if (std::isdigit(c)) {
        std::string s;
        while (std::isdigit(peek())) s += static_cast<char>(get());
        if (peek() == '.' && std::isdigit(peek(1))) {
          s += static_cast<char>(get());
          while (std::isdigit(peek())) s += static_cast<char>(get());
          Token t = make(Tok::RealLit, s, l, c0);
          auto dot = s.find('.');
          std::string frac = s.substr(dot + 1);
          Int scale = 1;
          for (size_t k = 0; k < frac.size(); ++k) scale *= 10;
          t.rval = Rat(Int(s.substr(0, dot)) * scale + Int(frac), scale);
          out.push_back(std::move(t));
        } else {
          Token t = make(Tok::IntLit, s, l, c0);
          t.ival = Int(s);
          out.push_back(std::move(t));
        }
        continue;
      }
      get();
      switch (c) {
        case '(': out.push_back(make(Tok::LParen, "(", l, c0)); break;
        case ')': out.push_back(make(Tok::RParen, ")", l, c0)); break;
        case ';': out.push_back(make(Tok::Semi, ";", l, c0)); break;
        case ',': out.push_back(make(Tok::Comma, ",", l, c0)); break;
        case ':': out.push_back(make(Tok::Colon, ":", l, c0)); break;
        case '+': out.push_back(make(Tok::Plus, "+", l, c0)); break;
        case '*': out.push_back(make(Tok::Star, "*", l, c0)); break;
        case '/': out.push_back(make(Tok::Slash, "/", l, c0)); break;
        case '-':
          if (peek() == '>') { get(); out.push_back(make(Tok::Arrow, "->", l, c0)); }
          else out.push_back(make(Tok::Minus, "-", l, c0));
          break;
        case '=':
          if (peek() == '>') { get(); out.push_back(make(Tok::Implies, "=>", l, c0)); }
          else out.push_back(make(Tok::Eq, "=", l, c0));
          break;
        case '<':
          if (peek() == '=') { get(); out.push_back(make(Tok::Le, "<=", l, c0)); }
          else out.push_back(make(Tok::Lt, "<", l, c0));
          break;
        case '>':
          if (peek() == '=') { get(); out.push_back(make(Tok::Ge, ">=", l, c0)); }
          else out.push_back(make(Tok::Gt, ">", l, c0));
          break;
        default:
          fail(DiagKind::LexError, std::string("unexpected character '") +
                                       static_cast<char>(c) + "'", l, c0);
      }
    }
  }
};

}  // namespace

std::vector<Token> lex(const std::string& source) {
  Lexer lx{source};
  return lx.run();
}

}  // namespace ivck
