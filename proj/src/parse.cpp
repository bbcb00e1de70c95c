#include "lamshift/parse.hpp"

#include <cctype>
#include <vector>

namespace lamshift {

namespace {

enum class Tok { Lambda, Dot, LParen, RParen, LAngle, RAngle, Ident, KwShift, End };

struct Token {
  Tok kind;
  VarName name;  // Ident payload
  int line, column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_part(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      int line = line_, col = col_;
      if (eof()) {
        out.push_back({Tok::End, {}, line, col});
        return out;
      }
      char c = peek();
      switch (c) {
        case '\\': advance(); out.push_back({Tok::Lambda, {}, line, col}); continue;
        case '.': advance(); out.push_back({Tok::Dot, {}, line, col}); continue;
        case '(': advance(); out.push_back({Tok::LParen, {}, line, col}); continue;
        case ')': advance(); out.push_back({Tok::RParen, {}, line, col}); continue;
        case '<': advance(); out.push_back({Tok::LAngle, {}, line, col}); continue;
        case '>': advance(); out.push_back({Tok::RAngle, {}, line, col}); continue;
        default: break;
      }
      if (!ident_start(c)) throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      std::string base;
      while (!eof() && ident_part(peek())) base += take();
      uint32_t index = 0;
      if (!eof() && peek() == '%') {
        advance();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
          throw ParseError(line_, col_, "expected digits after '%'");
        uint64_t n = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
          n = n * 10 + static_cast<uint64_t>(take() - '0');
          if (n > 0xffffffffull) throw ParseError(line, col, "variable index out of range");
        }
        index = static_cast<uint32_t>(n);
      }
      if (base == "shift") {
        if (index != 0) throw ParseError(line, col, "`shift` is a reserved word");
        out.push_back({Tok::KwShift, {}, line, col});
      } else {
        out.push_back({Tok::Ident, VarName{std::move(base), index}, line, col});
      }
    }
  }

 private:
  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  char take() {
    char c = src_[pos_];
    advance();
    return c;
  }
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_trivia() {
    for (;;) {
      while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
      if (!eof() && peek() == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
        while (!eof() && peek() != '\n') advance();
        continue;
      }
      return;
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Term run() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  void advance() { if (cur().kind != Tok::End) ++pos_; }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(cur().line, cur().column, msg); }
  void expect(Tok k, const std::string& what) {
    if (cur().kind != k) fail("expected " + what);
    advance();
  }
  VarName binder() {
    if (cur().kind != Tok::Ident) fail("expected a variable");
    VarName v = cur().name;
    advance();
    return v;
  }

  Term term() {
    if (cur().kind == Tok::Lambda) {
      advance();
      VarName v = binder();
      expect(Tok::Dot, "'.'");
      return mk_lam(std::move(v), term());
    }
    if (cur().kind == Tok::KwShift) {
      advance();
      VarName v = binder();
      expect(Tok::Dot, "'.'");
      return mk_shift(std::move(v), term());
    }
    return application();
  }

  bool at_atom() const {
    return cur().kind == Tok::Ident || cur().kind == Tok::LParen || cur().kind == Tok::LAngle;
  }

  Term application() {
    if (!at_atom()) fail("expected a term");
    Term t = atom();
    while (at_atom()) t = mk_app(std::move(t), atom());
    return t;
  }

  Term atom() {
    switch (cur().kind) {
      case Tok::Ident: {
        Term t = mk_var(cur().name);
        advance();
        return t;
      }
      case Tok::LParen: {
        advance();
        Term t = term();
        expect(Tok::RParen, "')'");
        return t;
      }
      case Tok::LAngle: {
        advance();
        Term t = term();
        expect(Tok::RAngle, "'>'");
        return mk_reset(std::move(t));
      }
      default:
        fail("expected a term");
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

enum class Prec { Top, AppFun, Atom };

void print_rec(const Term& t, Prec prec, std::string& out) {
  switch (t->kind) {
    case TermKind::Var:
      out += to_string(t->var);
      return;
    case TermKind::Lam:
    case TermKind::Shift: {
      bool parens = prec != Prec::Top;
      if (parens) out += '(';
      out += t->kind == TermKind::Lam ? "\\" : "shift ";
      out += to_string(t->var);
      out += ". ";
      print_rec(t->a, Prec::Top, out);
      if (parens) out += ')';
      return;
    }
    case TermKind::App: {
      bool parens = prec == Prec::Atom;
      if (parens) out += '(';
      print_rec(t->a, Prec::AppFun, out);
      out += ' ';
      print_rec(t->b, Prec::Atom, out);
      if (parens) out += ')';
      return;
    }
    case TermKind::Reset:
      out += '<';
      print_rec(t->a, Prec::Top, out);
      out += '>';
      return;
  }
}

}  // namespace

Term parse(std::string_view src) { return Parser(Lexer(src).run()).run(); }

std::string print(const Term& t) {
  std::string out;
  print_rec(t, Prec::Top, out);
  return out;
}

std::string print(const EvalCtx& e) { return print(plug(e, mk_var("@"))); }
std::string print(const PureCtx& f) { return print(plug(f, mk_var("@"))); }

}  // namespace lamshift
