#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "regdiff/qvaluation.hpp"
#include "regdiff/ratfunc.hpp"

namespace regdiff {

/// Polynomial in T1, T2 over Q, stored sparsely by exponent pair.
class BiPoly {
 public:
  using Exps = std::pair<int, int>;

  BiPoly() = default;
  static BiPoly constant(const Rat& c);
  static BiPoly T1();
  static BiPoly T2();

  const std::map<Exps, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rat coeff(int i, int j) const;
  void add_term(int i, int j, const Rat& c);
  int total_degree() const;
  int degree_T1() const;
  int degree_T2() const;

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly scaled(const Rat& c) const;
  bool operator==(const BiPoly& o) const { return terms_ == o.terms_; }

  BiPoly d_T1() const;
  BiPoly d_T2() const;
  Rat operator()(const Rat& a, const Rat& b) const;
  RatFunc eval(const RatFunc& a, const RatFunc& b) const;
  /// Exact quotient by d; std::nullopt if d does not divide this.
  std::optional<BiPoly> divide(const BiPoly& d) const;

  /// Integral coprime coefficients with positive leading coefficient in the
  /// lexicographic order T1 > T2.
  BiPoly normalized() const;

  std::string str() const;

 private:
  std::map<Exps, Rat> terms_;
};

/// (t1, t2): a uniformizer and a residue generator for a TypeII valuation v,
/// with the primitive relation F(t1, t2) = 0.
struct DefiningSystem {
  QVal v;
  RatFunc t1;
  RatFunc t2;
  BiPoly F;
};

/// Res_x(num(T1 - t1), num(T2 - t2)) with formal degrees, by evaluation and interpolation.
BiPoly elimination_resultant(const RatFunc& t1, const RatFunc& t2);

/// The normalized relation of minimal total degree between t1 and t2; it divides
/// the elimination resultant.
BiPoly defining_polynomial(const RatFunc& t1, const RatFunc& t2);

DefiningSystem defining_system(const QVal& v);
/// A system built from caller-provided t1, t2 (checked against v).
DefiningSystem defining_system(const QVal& v, const RatFunc& t1, const RatFunc& t2);

/// v(dx), computed from the system with the partial derivative in T2, or in T1 when
/// that one vanishes identically.
Rat order_dx(const DefiningSystem& ds);
Rat order_dx(const QVal& v);
/// Both formulas when both partials are nonzero (for cross-checks).
std::pair<std::optional<Rat>, std::optional<Rat>> order_dx_both(const DefiningSystem& ds);

}  // namespace regdiff
