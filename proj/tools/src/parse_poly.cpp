#include "regdiff_cli/parse_poly.hpp"

#include <cctype>

namespace regdiff::cli {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::invalid_argument(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

constexpr long kMaxExponent = 4096;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  QPoly parse() {
    QPoly r = expr();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }

  [[noreturn]] void fail_at(const std::string& msg, size_t at) const {
    int line = 1, col = 1;
    for (size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  QPoly expr() {
    QPoly r = term();
    for (;;) {
      if (accept('+'))
        r += term();
      else if (accept('-'))
        r -= term();
      else
        return r;
    }
  }

  QPoly term() {
    QPoly r = unary();
    for (;;) {
      if (accept('*')) {
        r = r * unary();
      } else if (accept('/')) {
        skip_ws();
        size_t at = pos_;
        QPoly d = unary();
        if (d.degree() > 0) fail_at("not a polynomial: division by a nonconstant expression", at);
        if (d.is_zero()) fail_at("division by zero", at);
        r = r.scaled(1 / d.coeff(0));
      } else {
        return r;
      }
    }
  }

  QPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  QPoly power() {
    QPoly b = primary();
    if (!accept('^')) return b;
    skip_ws();
    size_t at = pos_;
    QPoly e = accept('(') ? close_paren(expr()) : (accept('-') ? -power() : power());
    if (e.degree() > 0 || e.coeff(0).get_den() != 1 || e.coeff(0) < 0)
      fail_at("exponent must be a nonnegative integer", at);
    if (e.coeff(0) > kMaxExponent) fail_at("exponent too large", at);
    return pow(b, static_cast<unsigned>(e.coeff(0).get_num().get_ui()));
  }

  QPoly close_paren(QPoly r) {
    if (!accept(')')) fail("expected ')'");
    return r;
  }

  QPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      return close_paren(expr());
    }
    if (c == 'x') {
      ++pos_;
      return QPoly(std::vector<Rat>{Rat(0), Rat(1)});
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return QPoly(Rat(Int(s_.substr(start, pos_ - start))));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

QPoly parse_poly(const std::string& src) { return Parser(src).parse(); }

}  // namespace regdiff::cli
