#include "posgeom/parser.hpp"

#include <algorithm>
#include <cctype>

#include "posgeom/errors.hpp"

namespace posgeom {

namespace {

struct Token {
  enum Kind { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
  std::string text;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ >= s_.size()) {
      tok_ = {Token::End, ""};
      return;
    }
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      // A '/' directly followed by digits is part of a rational literal.
      if (j < s_.size() && s_[j] == '/' && j + 1 < s_.size() &&
          std::isdigit(static_cast<unsigned char>(s_[j + 1]))) {
        ++j;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      }
      tok_ = {Token::Number, s_.substr(i_, j - i_)};
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      tok_ = {Token::Ident, s_.substr(i_, j - i_)};
      i_ = j;
      return;
    }
    ++i_;
    switch (c) {
      case '+': tok_ = {Token::Plus, "+"}; return;
      case '-': tok_ = {Token::Minus, "-"}; return;
      case '*': tok_ = {Token::Star, "*"}; return;
      case '^': tok_ = {Token::Caret, "^"}; return;
      case '(': tok_ = {Token::LParen, "("}; return;
      case ')': tok_ = {Token::RParen, ")"}; return;
      default: throw ParseError(std::string("unexpected character '") + c + "'");
    }
  }

  const std::string& s_;
  size_t i_ = 0;
  Token tok_;
};

class PolyParser {
public:
  explicit PolyParser(const std::string& s) : lex_(s) {}

  MPoly parse() {
    MPoly p = expr();
    if (lex_.peek().kind != Token::End)
      throw ParseError("trailing input after polynomial: '" + lex_.peek().text + "'");
    return p;
  }

private:
  MPoly expr() {
    bool neg = false;
    if (lex_.peek().kind == Token::Plus) lex_.next();
    else if (lex_.peek().kind == Token::Minus) { lex_.next(); neg = true; }
    MPoly p = term();
    if (neg) p = -p;
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      const bool minus = lex_.next().kind == Token::Minus;
      MPoly t = term();
      p += minus ? -t : t;
    }
    return p;
  }

  MPoly term() {
    MPoly p = factor();
    while (lex_.peek().kind == Token::Star) {
      lex_.next();
      p = p * factor();
    }
    return p;
  }

  MPoly factor() {
    MPoly b = base();
    if (lex_.peek().kind == Token::Caret) {
      lex_.next();
      const Token e = lex_.next();
      if (e.kind != Token::Number || e.text.find('/') != std::string::npos)
        throw ParseError("exponent must be a nonnegative integer");
      b = b.pow(std::stoi(e.text));
    }
    return b;
  }

  MPoly base() {
    const Token t = lex_.next();
    switch (t.kind) {
      case Token::Number: return MPoly::constant(Rat::from_string(t.text));
      case Token::Ident: return MPoly::variable(t.text);
      case Token::Minus: return -base();
      case Token::LParen: {
        MPoly p = expr();
        if (lex_.next().kind != Token::RParen) throw ParseError("expected ')'");
        return p;
      }
      default: throw ParseError("unexpected token '" + t.text + "'");
    }
  }

  Lexer lex_;
};

}  // namespace

MPoly parse_poly(const std::string& text,
                 const std::optional<std::vector<std::string>>& vars) {
  MPoly p = PolyParser(text).parse();
  if (vars) {
    for (const auto& v : p.vars())
      if (p.depends_on(v) && std::find(vars->begin(), vars->end(), v) == vars->end())
        throw ParseError("unknown variable '" + v + "' in '" + text + "'");
    return p.with_vars(*vars);
  }
  std::vector<std::string> v = p.vars();
  std::sort(v.begin(), v.end());
  return p.with_vars(v);
}

Rat parse_rat(const std::string& text) {
  const MPoly p = PolyParser(text).parse();
  if (!p.is_constant()) throw ParseError("expected a rational constant: '" + text + "'");
  return p.constant_value();
}

}  // namespace posgeom
