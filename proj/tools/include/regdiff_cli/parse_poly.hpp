#pragma once

#include <stdexcept>
#include <string>

#include "regdiff/qpoly.hpp"

namespace regdiff::cli {

/// Syntax or semantic error in a polynomial expression, with a 1-based source position.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses integers, rationals a/b, x, + - * ^ and parentheses into an exact polynomial.
/// ^ binds tighter than unary minus and *, and takes a nonnegative integer exponent.
/// Division is accepted only by nonzero constants.
QPoly parse_poly(const std::string& src);

}  // namespace regdiff::cli
