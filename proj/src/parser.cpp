#include "ivckind/frontend.hpp"
#include "lexer.hpp"
#include "typecheck.hpp"

namespace ivck {

namespace {

// Recursive descent over the token stream. Precedence, loosest first:
//   ->  (right)   =>  (right)   or   and   not   < <= > >= =   + -
//   * / div mod   unary -   pre   primary
// `if then else` parses as a primary-level construct whose else branch
// extends as far right as possible.
struct Parser {
  const std::vector<Token>& ts;
  size_t i = 0;

  const Token& cur() const { return ts[i]; }
  const Token& next() { return ts[i++]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool eat(Tok k) {
    if (!at(k)) return false;
    ++i;
    return true;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (!at(k))
      fail(DiagKind::ParseError, "expected " + what + ", found '" + cur().text + "'",
           cur().line, cur().col);
    return next();
  }
  std::string expect_ident() { return expect(Tok::Ident, "identifier").text; }

  Ty parse_type() {
    if (eat(Tok::KwBool)) return Ty::Bool;
    if (eat(Tok::KwInt)) return Ty::Int;
    if (eat(Tok::KwReal)) return Ty::Real;
    fail(DiagKind::ParseError, "expected type, found '" + cur().text + "'", cur().line,
         cur().col);
  }

  // `a, b : int; c : real` — groups separated by ';'.
  void parse_params(std::vector<std::pair<std::string, Ty>>* out, Tok terminator) {
    if (at(terminator)) return;
    for (;;) {
      std::vector<std::string> names{expect_ident()};
      while (eat(Tok::Comma)) names.push_back(expect_ident());
      expect(Tok::Colon, "':'");
      Ty ty = parse_type();
      for (auto& n : names) out->emplace_back(std::move(n), ty);
      if (!eat(Tok::Semi)) break;
      if (at(terminator)) break;  // allow trailing ';'
    }
  }

  Program parse_program() {
    Program p;
    if (at(Tok::End)) fail(DiagKind::ParseError, "expected node", cur().line, cur().col);
    while (!at(Tok::End)) p.nodes.push_back(parse_node());
    p.main = p.nodes.back().name;
    return p;
  }

  Node parse_node() {
    Node n;
    const Token& kw = expect(Tok::KwNode, "'node'");
    n.line = kw.line;
    n.col = kw.col;
    n.name = expect_ident();
    expect(Tok::LParen, "'('");
    parse_params(&n.inputs, Tok::RParen);
    expect(Tok::RParen, "')'");
    expect(Tok::KwReturns, "'returns'");
    expect(Tok::LParen, "'('");
    parse_params(&n.outputs, Tok::RParen);
    expect(Tok::RParen, "')'");
    expect(Tok::Semi, "';'");
    if (eat(Tok::KwVar)) parse_params(&n.locals, Tok::KwLet);
    expect(Tok::KwLet, "'let'");
    while (!eat(Tok::KwTel)) {
      if (eat(Tok::PragmaProperty)) {
        n.properties.push_back(expect_ident());
        expect(Tok::Semi, "';'");
      } else if (eat(Tok::PragmaIvc)) {
        n.has_ivc_annotation = true;
        n.ivc_annotation.push_back(expect_ident());
        while (eat(Tok::Comma)) n.ivc_annotation.push_back(expect_ident());
        expect(Tok::Semi, "';'");
      } else {
        Equation eq;
        const Token& t = cur();
        eq.line = t.line;
        eq.col = t.col;
        eq.target = expect_ident();
        expect(Tok::Eq, "'='");
        eq.rhs = parse_expr();
        expect(Tok::Semi, "';'");
        n.equations.push_back(std::move(eq));
      }
    }
    eat(Tok::Semi);  // optional after tel
    return n;
  }

  EP with_pos(EP e, const Token& t) {
    e->line = t.line;
    e->col = t.col;
    return e;
  }

  EP parse_expr() { return parse_arrow(); }

  EP parse_arrow() {
    EP lhs = parse_implies();
    if (at(Tok::Arrow)) {
      const Token& t = next();
      return with_pos(expr_arrow(std::move(lhs), parse_arrow()), t);
    }
    return lhs;
  }

  EP parse_implies() {
    EP lhs = parse_or();
    if (at(Tok::Implies)) {
      const Token& t = next();
      return with_pos(expr_bin(Expr::Op::Imp, std::move(lhs), parse_implies()), t);
    }
    return lhs;
  }

  EP parse_or() {
    EP e = parse_and();
    while (at(Tok::KwOr)) {
      const Token& t = next();
      e = with_pos(expr_bin(Expr::Op::Or, std::move(e), parse_and()), t);
    }
    return e;
  }

  EP parse_and() {
    EP e = parse_not();
    while (at(Tok::KwAnd)) {
      const Token& t = next();
      e = with_pos(expr_bin(Expr::Op::And, std::move(e), parse_not()), t);
    }
    return e;
  }

  EP parse_not() {
    if (at(Tok::KwNot)) {
      const Token& t = next();
      return with_pos(expr_un(Expr::Op::Not, parse_not()), t);
    }
    return parse_cmp();
  }

  EP parse_cmp() {
    EP lhs = parse_add();
    Expr::Op op;
    switch (cur().kind) {
      case Tok::Lt: op = Expr::Op::Lt; break;
      case Tok::Le: op = Expr::Op::Le; break;
      case Tok::Gt: op = Expr::Op::Gt; break;
      case Tok::Ge: op = Expr::Op::Ge; break;
      case Tok::Eq: op = Expr::Op::Eq; break;
      default: return lhs;
    }
    const Token& t = next();
    return with_pos(expr_bin(op, std::move(lhs), parse_add()), t);  // non-associative
  }

  EP parse_add() {
    EP e = parse_mul();
    for (;;) {
      Expr::Op op;
      if (at(Tok::Plus)) op = Expr::Op::Add;
      else if (at(Tok::Minus)) op = Expr::Op::Sub;
      else break;
      const Token& t = next();
      e = with_pos(expr_bin(op, std::move(e), parse_mul()), t);
    }
    return e;
  }

  EP parse_mul() {
    EP e = parse_unary();
    for (;;) {
      Expr::Op op;
      if (at(Tok::Star)) op = Expr::Op::Mul;
      else if (at(Tok::Slash)) op = Expr::Op::Div;
      else if (at(Tok::KwDiv)) op = Expr::Op::Div;
      else if (at(Tok::KwMod)) op = Expr::Op::Mod;
      else break;
      const Token& t = next();
      e = with_pos(expr_bin(op, std::move(e), parse_unary()), t);
    }
    return e;
  }

  EP parse_unary() {
    if (at(Tok::Minus)) {
      const Token& t = next();
      return with_pos(expr_un(Expr::Op::Neg, parse_unary()), t);
    }
    if (at(Tok::KwPre)) {
      const Token& t = next();
      return with_pos(expr_pre(parse_unary()), t);
    }
    return parse_primary();
  }

  EP parse_primary() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::KwTrue: next(); return with_pos(expr_bool(true), t);
      case Tok::KwFalse: next(); return with_pos(expr_bool(false), t);
      case Tok::IntLit: next(); return with_pos(expr_int(t.ival), t);
      case Tok::RealLit: next(); return with_pos(expr_real(t.rval), t);
      case Tok::LParen: {
        next();
        EP e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::KwIf: {
        next();
        EP c = parse_expr();
        expect(Tok::KwThen, "'then'");
        EP a = parse_expr();
        expect(Tok::KwElse, "'else'");
        EP b = parse_expr();
        return with_pos(expr_ite(std::move(c), std::move(a), std::move(b)), t);
      }
      case Tok::Ident: {
        next();
        if (eat(Tok::LParen)) {
          std::vector<EP> args;
          if (!at(Tok::RParen)) {
            args.push_back(parse_expr());
            while (eat(Tok::Comma)) args.push_back(parse_expr());
          }
          expect(Tok::RParen, "')'");
          return with_pos(expr_call(t.text, std::move(args)), t);
        }
        return with_pos(expr_var(t.text), t);
      }
      default:
        fail(DiagKind::ParseError, "expected expression, found '" + t.text + "'", t.line,
             t.col);
    }
  }
};

}  // namespace

Program parse(const std::string& source) {
  std::vector<Token> tokens = lex(source);
  Parser parser{tokens};
  Program p = parser.parse_program();
  typecheck(p);
  return p;
}

}  // namespace ivck
