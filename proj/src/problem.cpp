#include "kbrec/problem.hpp"

#include <cctype>
#include <vector>

namespace kbrec {

namespace {

enum class Tok { LParen, RParen, Comma, Equals, Arrow, Gt, Ident, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

[[noreturn]] void fail(int line, int col, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ", column " +
                   std::to_string(col) + ": " + msg);
}

[[noreturn]] void fail(const Token& tok, const std::string& msg) {
  fail(tok.line, tok.col, msg);
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token out = tok_;
    advance();
    return out;
  }

 private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      bump();
    tok_ = Token{Tok::End, "", line_, col_};
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    switch (c) {
      case '(': tok_.kind = Tok::LParen; bump(); return;
      case ')': tok_.kind = Tok::RParen; bump(); return;
      case ',': tok_.kind = Tok::Comma; bump(); return;
      case '=': tok_.kind = Tok::Equals; bump(); return;
      case '>': tok_.kind = Tok::Gt; bump(); return;
      case '-':
        bump();
        if (pos_ >= text_.size() || text_[pos_] != '>')
          fail(tok_.line, tok_.col, "expected '>' after '-'");
        bump();
        tok_.kind = Tok::Arrow;
        return;
      default: break;
    }
    if (c == kReservedChar)
      fail(line_, col_, "reserved character '#' in input");
    if (!is_ident_char(c))
      fail(line_, col_, std::string("unexpected character '") + c + "'");
    tok_.kind = Tok::Ident;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      tok_.text.push_back(text_[pos_]);
      bump();
    }
    if (pos_ < text_.size() && text_[pos_] == kReservedChar)
      fail(line_, col_, "reserved character '#' in identifier");
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

Token expect(Lexer& lx, Tok kind, const char* what) {
  Token t = lx.next();
  if (t.kind != kind) fail(t, std::string("expected ") + what);
  return t;
}

Term parse_term(Lexer& lx, const std::set<std::string>& vars, Signature& sig) {
  Token id = expect(lx, Tok::Ident, "a term");
  if (lx.peek().kind == Tok::LParen) {
    if (vars.count(id.text))
      fail(id, "variable '" + id.text + "' used with arguments");
    lx.next();
    std::vector<Term> args;
    args.push_back(parse_term(lx, vars, sig));
    while (lx.peek().kind == Tok::Comma) {
      lx.next();
      args.push_back(parse_term(lx, vars, sig));
    }
    expect(lx, Tok::RParen, "')'");
    try {
      sig.declare(id.text, args.size());
    } catch (const InputError& e) {
      fail(id, e.what());
    }
    return Term::app(id.text, std::move(args));
  }
  if (vars.count(id.text)) return Term::var(id.text);
  try {
    sig.declare(id.text, 0);
  } catch (const InputError& e) {
    fail(id, e.what());
  }
  return Term::app(id.text);
}

}  // namespace

Problem parse_problem(const std::string& text) {
  Problem p;
  Lexer lx(text);
  std::vector<std::pair<std::string, std::string>> prec_pairs;
  if (lx.peek().kind == Tok::End)
    fail(lx.peek(), "empty problem file");
  while (lx.peek().kind != Tok::End) {
    expect(lx, Tok::LParen, "'('");
    Token kw = expect(lx, Tok::Ident, "a section keyword");
    if (kw.text == "VAR") {
      while (lx.peek().kind == Tok::Ident) p.vars.insert(lx.next().text);
    } else if (kw.text == "PREC") {
      p.has_prec = true;
      while (lx.peek().kind == Tok::Ident) {
        Token prev = lx.next();
        if (lx.peek().kind != Tok::Gt)
          fail(lx.peek(), "precedence chain needs at least f > g");
        while (lx.peek().kind == Tok::Gt) {
          lx.next();
          Token cur = expect(lx, Tok::Ident, "a symbol name");
          prec_pairs.emplace_back(prev.text, cur.text);
          prev = cur;
        }
        if (lx.peek().kind != Tok::Comma) break;
        lx.next();
        if (lx.peek().kind != Tok::Ident)
          fail(lx.peek(), "expected a precedence chain after ','");
      }
    } else if (kw.text == "EQUATIONS") {
      while (lx.peek().kind == Tok::Ident) {
        Term lhs = parse_term(lx, p.vars, p.sig);
        expect(lx, Tok::Equals, "'='");
        Term rhs = parse_term(lx, p.vars, p.sig);
        p.equations.push_back(Equation{
            static_cast<int>(p.equations.size()) + 1, lhs, rhs});
        if (lx.peek().kind != Tok::Comma) break;
        lx.next();
        if (lx.peek().kind != Tok::Ident)
          fail(lx.peek(), "expected an equation after ','");
      }
    } else if (kw.text == "RULES") {
      while (lx.peek().kind == Tok::Ident) {
        Term lhs = parse_term(lx, p.vars, p.sig);
        expect(lx, Tok::Arrow, "'->'");
        Term rhs = parse_term(lx, p.vars, p.sig);
        p.rules.push_back(
            Rule{static_cast<int>(p.rules.size()) + 1, lhs, rhs});
        if (lx.peek().kind != Tok::Comma) break;
        lx.next();
        if (lx.peek().kind != Tok::Ident)
          fail(lx.peek(), "expected a rule after ','");
      }
    } else {
      fail(kw, "unknown section '" + kw.text + "'");
    }
    expect(lx, Tok::RParen, "')'");
  }
  // variables can only collide with symbols through VAR sections read after
  // the use; re-check the accumulated signature
  for (const std::string& v : p.vars)
    if (p.sig.contains(v))
      throw ParseError("name '" + v +
                       "' used both as variable and function symbol");
  p.prec = Precedence::from_pairs(prec_pairs);
  return p;
}

Term parse_term_text(const std::string& text, const std::set<std::string>& vars,
                     Signature& sig) {
  Lexer lx(text);
  Term t = parse_term(lx, vars, sig);
  if (lx.peek().kind != Tok::End)
    fail(lx.peek(), "trailing input after term");
  return t;
}

std::pair<Term, Term> parse_goal_text(const std::string& text,
                                      const std::set<std::string>& vars,
                                      Signature& sig) {
  Lexer lx(text);
  Term s = parse_term(lx, vars, sig);
  expect(lx, Tok::Equals, "'='");
  Term t = parse_term(lx, vars, sig);
  if (lx.peek().kind != Tok::End)
    fail(lx.peek(), "trailing input after goal");
  return {s, t};
}

}  // namespace kbrec
