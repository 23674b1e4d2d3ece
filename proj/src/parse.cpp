#include "aicat/parse.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace aicat {

namespace {

enum class Tok { Ident, Int, Sym, Kw, End };

struct Token {
  Tok kind;
  std::string text;  // symbol text / keyword / identifier
  long long value = 0;
  int line = 1, col = 1;
};

const std::set<std::string> kKeywords = {
    "skip", "if",     "else",   "while", "havoc", "flip", "diverge",
    "addvar", "delvar", "true", "false", "not",   "and",  "or"};

struct Lexer {
  std::vector<Token> toks;

  explicit Lexer(const std::string& s) {
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
      for (std::size_t k = 0; k < n; ++k) {
        if (s[i + k] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      i += n;
    };
    while (i < s.size()) {
      char c = s[i];
      if (c == '#') {
        while (i < s.size() && s[i] != '\n') advance(1);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      Token t;
      t.line = line;
      t.col = col;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        t.kind = Tok::Int;
        t.text = s.substr(i, j - i);
        try {
          t.value = std::stoll(t.text);
        } catch (const std::out_of_range&) {
          throw ParseError("integer literal out of range: " + t.text, line, col);
        }
        advance(j - i);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                                s[j] == '_'))
          ++j;
        t.text = s.substr(i, j - i);
        t.kind = kKeywords.count(t.text) ? Tok::Kw : Tok::Ident;
        advance(j - i);
      } else {
        static const std::vector<std::string> two = {":=", "<="};
        std::string pair = s.substr(i, 2);
        bool matched = false;
        for (const auto& sym : two)
          if (pair == sym) {
            t.kind = Tok::Sym;
            t.text = sym;
            advance(2);
            matched = true;
            break;
          }
        if (!matched) {
          static const std::string singles = ";(){}+-*<=,/";
          if (singles.find(c) == std::string::npos)
            throw ParseError(std::string("unexpected character '") + c + "'",
                             line, col);
          t.kind = Tok::Sym;
          t.text = std::string(1, c);
          advance(1);
        }
      }
      toks.push_back(t);
    }
    Token end;
    end.kind = Tok::End;
    end.line = line;
    end.col = col;
    end.text = "<end of input>";
    toks.push_back(end);
  }
};

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;

  explicit Parser(const std::string& s) : toks(Lexer(s).toks) {}

  const Token& peek() const { return toks[pos]; }
  const Token& get() { return toks[pos++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg + " (found '" + t.text + "')", t.line, t.col);
  }

  bool at_sym(const std::string& s) const {
    return peek().kind == Tok::Sym && peek().text == s;
  }
  bool at_kw(const std::string& s) const {
    return peek().kind == Tok::Kw && peek().text == s;
  }
  void expect_sym(const std::string& s) {
    if (!at_sym(s)) fail("expected '" + s + "'");
    ++pos;
  }
  void expect_kw(const std::string& s) {
    if (!at_kw(s)) fail("expected '" + s + "'");
    ++pos;
  }
  std::string expect_ident() {
    if (peek().kind == Tok::Kw)
      fail("reserved word '" + peek().text + "' cannot be used as a variable");
    if (peek().kind != Tok::Ident) fail("expected identifier");
    return get().text;
  }
  long long expect_int() {
    bool neg = false;
    if (at_sym("-")) {
      ++pos;
      neg = true;
    }
    if (peek().kind != Tok::Int) fail("expected integer");
    long long v = get().value;
    return neg ? -v : v;
  }

  // ---- arithmetic ----

  AExprPtr factor() {
    if (at_sym("(")) {
      ++pos;
      AExprPtr e = aexpr();
      expect_sym(")");
      return e;
    }
    if (at_sym("-")) {
      ++pos;
      if (peek().kind == Tok::Int) return lit(-get().value);
      return abin(AOp::Sub, lit(0), factor());
    }
    if (peek().kind == Tok::Int) return lit(get().value);
    return var(expect_ident());
  }

  AExprPtr term() {
    AExprPtr e = factor();
    while (at_sym("*")) {
      ++pos;
      e = abin(AOp::Mul, e, factor());
    }
    return e;
  }

  AExprPtr aexpr() {
    AExprPtr e = term();
    while (at_sym("+") || at_sym("-")) {
      AOp op = at_sym("+") ? AOp::Add : AOp::Sub;
      ++pos;
      e = abin(op, e, term());
    }
    return e;
  }

  // ---- boolean ----

  BExprPtr comparison() {
    AExprPtr l = aexpr();
    CmpOp op;
    if (at_sym("<="))
      op = CmpOp::Le;
    else if (at_sym("<"))
      op = CmpOp::Lt;
    else if (at_sym("="))
      op = CmpOp::Eq;
    else
      fail("expected comparison operator");
    ++pos;
    return bcmp(op, l, aexpr());
  }

  BExprPtr bneg() {
    if (at_kw("not")) {
      ++pos;
      return bnot(bneg());
    }
    if (at_kw("true")) {
      ++pos;
      return btrue();
    }
    if (at_kw("false")) {
      ++pos;
      return bfalse();
    }
    if (at_sym("(")) {
      // '(' is ambiguous between a parenthesized boolean and the left
      // operand of a comparison; try the boolean reading first.
      std::size_t save = pos;
      ++pos;
      try {
        BExprPtr b = bexpr();
        expect_sym(")");
        if (at_sym("<=") || at_sym("<") || at_sym("="))
          fail("comparison of boolean");  // force arithmetic reading
        return b;
      } catch (const ParseError&) {
        pos = save;
      }
    }
    return comparison();
  }

  BExprPtr band_() {
    BExprPtr b = bneg();
    while (at_kw("and")) {
      ++pos;
      b = band(b, bneg());
    }
    return b;
  }

  BExprPtr bexpr() {
    BExprPtr b = band_();
    while (at_kw("or")) {
      ++pos;
      b = bor(b, band_());
    }
    return b;
  }

  // ---- statements ----

  Rational rational() {
    long long num = expect_int();
    long long den = 1;
    if (at_sym("/")) {
      ++pos;
      den = expect_int();
      if (den == 0) fail("zero denominator");
    }
    return Rational(num, den);
  }

  ProgramPtr block() {
    expect_sym("{");
    ProgramPtr p = prog();
    expect_sym("}");
    return p;
  }

  ProgramPtr stmt() {
    if (at_kw("skip")) {
      ++pos;
      return skip();
    }
    if (at_kw("diverge")) {
      ++pos;
      return diverge();
    }
    if (at_kw("addvar")) {
      ++pos;
      return addvar(expect_ident());
    }
    if (at_kw("delvar")) {
      ++pos;
      return delvar(expect_ident());
    }
    if (at_kw("if")) {
      ++pos;
      BExprPtr c = bexpr();
      ProgramPtr t = block();
      expect_kw("else");
      ProgramPtr e = block();
      return ifelse(c, t, e);
    }
    if (at_kw("while")) {
      ++pos;
      BExprPtr c = bexpr();
      return whileloop(c, block());
    }
    std::string v = expect_ident();
    expect_sym(":=");
    if (at_kw("havoc")) {
      ++pos;
      expect_sym("(");
      long long lo = expect_int();
      expect_sym(",");
      long long hi = expect_int();
      expect_sym(")");
      if (lo > hi) fail("empty havoc range");
      return havoc(v, lo, hi);
    }
    if (at_kw("flip")) {
      ++pos;
      expect_sym("(");
      Rational p = rational();
      expect_sym(",");
      AExprPtr l = aexpr();
      expect_sym(",");
      AExprPtr r = aexpr();
      expect_sym(")");
      if (p < Rational(0) || p > Rational(1))
        fail("flip probability must lie in [0, 1]");
      return flip(v, p, l, r);
    }
    return assign(v, aexpr());
  }

  ProgramPtr prog() {
    ProgramPtr p = stmt();
    while (at_sym(";")) {
      ++pos;
      p = seq(p, stmt());
    }
    return p;
  }
};

}  // namespace

ProgramPtr parse_program(const std::string& text) {
  Parser p(text);
  ProgramPtr prog = p.prog();
  if (p.peek().kind != Tok::End) p.fail("trailing input");
  return normalize(prog);
}

AExprPtr parse_aexpr_str(const std::string& text) {
  Parser p(text);
  AExprPtr e = p.aexpr();
  if (p.peek().kind != Tok::End) p.fail("trailing input");
  return e;
}

BExprPtr parse_bexpr_str(const std::string& text) {
  Parser p(text);
  BExprPtr b = p.bexpr();
  if (p.peek().kind != Tok::End) p.fail("trailing input");
  return b;
}

ProgramPtr parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_program(os.str());
}

}  // namespace aicat
