#pragma once

#include <string>
#include <utility>
#include <vector>

#include "regdiff/rational.hpp"

namespace regdiff {

/// Dense univariate polynomial over Q with trailing zeros trimmed.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rat> coeffs);
  QPoly(const Rat& c);  // NOLINT(google-explicit-constructor)
  QPoly(long c);        // NOLINT(google-explicit-constructor)

  static QPoly x() { return monomial(1, 1); }
  static QPoly monomial(const Rat& c, int deg);

  /// Degree, -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rat(0); }
  Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

  Rat operator()(const Rat& t) const;
  QPoly compose(const QPoly& g) const;
  QPoly derivative() const;
  QPoly monic() const;
  QPoly scaled(const Rat& c) const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(QPoly a, const QPoly& b) { return a *= b; }
  friend QPoly operator-(const QPoly& a) { return a.scaled(Rat(-1)); }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  friend bool operator<(const QPoly& a, const QPoly& b);

  /// Human readable form in the variable `var`, highest degree first.
  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

QPoly pow(const QPoly& f, unsigned k);
/// Quotient and remainder; throws on division by zero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);
/// Resultant of a and b.
Rat resultant(const QPoly& a, const QPoly& b);
bool squarefree_test(const QPoly& f);
/// Product of distinct monic irreducible-content factors: f / gcd(f, f').
QPoly squarefree_part(const QPoly& f);
/// Minimum p-adic valuation of the coefficients.
ExtRat gauss_valuation(const QPoly& f, long p);
/// Least common multiple of the coefficient denominators.
Int content_denominator(const QPoly& f);

/// Result of moving a monic polynomial into integral form by x -> p^(-k) x + c.
struct IntegralForm {
  long p = 2;
  long k = 0;
  Rat shift{0};
  QPoly g;
  /// Maps a polynomial in the original variable to the new variable.
  QPoly to_new(const QPoly& h) const;
};
IntegralForm make_integral(const QPoly& f, long p);

}  // namespace regdiff
