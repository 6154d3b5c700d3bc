#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "regdiff/finite_field.hpp"

namespace regdiff {

/// Element of F_q(t): reduced fraction with monic denominator.
struct RatFn {
  FFPoly num;
  FFPoly den;
};

/// The rational function field F_q(t) as a polyops field.
class RatFnField {
 public:
  using Elem = RatFn;

  explicit RatFnField(FFPtr k) : k_(std::move(k)) {}
  const FFPtr& constants() const { return k_; }

  Elem zero() const;
  Elem one() const;
  Elem from_const(const FiniteField::Elem& c) const;
  Elem from_poly(const FFPoly& f) const;
  Elem make(FFPoly num, FFPoly den) const;
  Elem t() const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  bool is_zero(const Elem& a) const { return a.num.empty(); }
  bool eq(const Elem& a, const Elem& b) const { return a.num == b.num && a.den == b.den; }

  std::string str(const Elem& a, const std::string& var = "t") const;

 private:
  FFPtr k_;
};

bool ratfn_less(const RatFn& a, const RatFn& b);

using RFPoly = PolyOf<RatFnField>;

class ResField;
using ResFieldPtr = std::shared_ptr<const ResField>;

/// F_q(t), optionally extended by one algebraic layer F_q(t)[s]/(h).
/// Elements are coordinate vectors in the basis 1, s, ..., s^(L-1).
class ResField {
 public:
  using Elem = std::vector<RatFn>;

  static ResFieldPtr rational(FFPtr k);
  /// Adjoins a root of the monic irreducible h of degree >= 2 over F_q(t).
  static ResFieldPtr layered(FFPtr k, RFPoly h);

  const FFPtr& constants() const { return rf_.constants(); }
  const RatFnField& rf() const { return rf_; }
  bool has_layer() const { return !h_.empty(); }
  int layer_degree() const { return L_; }
  const RFPoly& layer() const { return h_; }
  long p() const { return constants()->p(); }

  Elem zero() const;
  Elem one() const;
  Elem from_rf(const RatFn& a) const;
  Elem from_const(const FiniteField::Elem& c) const { return from_rf(rf_.from_const(c)); }
  Elem t() const { return from_rf(rf_.t()); }
  /// The layer generator s; throws without a layer.
  Elem s() const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, long e) const;
  bool is_zero(const Elem& a) const;
  bool eq(const Elem& a, const Elem& b) const;

  std::string str(const Elem& a) const;
  bool same_as(const ResField& o) const;

 private:
  ResField(FFPtr k, RFPoly h);
  RFPoly to_poly(const Elem& a) const;
  Elem from_poly(RFPoly f) const;

  RatFnField rf_;
  RFPoly h_;
  int L_ = 1;
};

using ResPoly = PolyOf<ResField>;

bool res_poly_less(const ResPoly& a, const ResPoly& b);
std::string res_poly_str(const ResField& K, const ResPoly& f, const std::string& var = "z");

/// Monic irreducible factors over F_q(t), sorted by res_poly_less.
/// Supports linear polynomials, polynomials with constant coefficients, binomials
/// z^m - a (p not dividing m) and their factors C^d q(z^m / C) with q over F_q;
/// anything else raises std::domain_error.
std::vector<std::pair<ResPoly, int>> res_factor(const ResField& K, const ResPoly& f);

/// L = K[z]/(psi) for a monic irreducible psi, in the same representation.
struct ResExtension {
  ResFieldPtr base;
  ResFieldPtr field;
  ResPoly psi;
  ResField::Elem root;

  ResField::Elem embed(const ResField::Elem& a) const;
  /// Coordinates (c_j) in base with x = sum_j c_j root^j.
  std::vector<ResField::Elem> decompose(const ResField::Elem& x) const;
};

/// Extends K by a root of psi; a second algebraic layer raises std::domain_error.
ResExtension res_extend(const ResFieldPtr& K, const ResPoly& psi);

/// F_p coordinates of the given elements after multiplying all of them by
/// one common denominator; F_p-linear relations are preserved.
std::vector<std::vector<long>> fp_coordinates(const ResField& K,
                                              const std::vector<ResField::Elem>& elems);

}  // namespace regdiff
