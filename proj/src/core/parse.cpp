#include "k3lab/parse.hpp"

#include <cctype>

namespace k3lab {
namespace {

class Parser {
 public:
  Parser(std::string_view s, const VarList& vars) : s_(s), vars_(intern_vars(vars)) {}

  RationalFunction run() {
    RationalFunction r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("expression parse error at " + std::to_string(pos_) + ": " + why);
  }

  RationalFunction expr() {
    RationalFunction r = term();
    while (true) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
  RationalFunction term() {
    RationalFunction r = unary();
    while (true) {
      if (eat('*')) {
        r *= unary();
      } else if (eat('/')) {
        RationalFunction d = unary();
        if (d.is_zero()) fail("division by zero");
        r /= d;
      } else {
        skip();
        // Juxtaposition: "2x" or "x(y+1)" multiply.
        if (pos_ < s_.size() && (s_[pos_] == '(' || std::isalpha(static_cast<unsigned char>(s_[pos_])) ))
          r *= power();
        else
          return r;
      }
    }
  }
  RationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RationalFunction power() {
    RationalFunction base = atom();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      return base.pow(neg ? -e : e);
    }
    return base;
  }
  RationalFunction atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalFunction(Poly(vars_, Rational(Integer(std::string(s_.substr(start, pos_ - start))))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (auto& v : *vars_)
        if (v == name) return RationalFunction(Poly::variable(*vars_, name));
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  VarsPtr vars_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rf(std::string_view text, const VarList& vars) {
  return Parser(text, vars).run().to_vars(intern_vars(vars));
}

Poly parse_poly(std::string_view text, const VarList& vars) {
  RationalFunction r = parse_rf(text, vars);
  if (!r.is_polynomial()) throw ParseError("expression is not a polynomial: " + std::string(text));
  return r.num() * Rational(1 / r.den().leading_coeff());
}

}  // namespace k3lab
