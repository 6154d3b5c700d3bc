#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "regdiff/polyops.hpp"
#include "regdiff/rational.hpp"

namespace regdiff {

class FiniteField;
using FFPtr = std::shared_ptr<const FiniteField>;

/// F_{p^d} realized as F_p[a]/(m(a)) with m monic irreducible of degree d.
/// Elements are coefficient vectors of length d with entries in [0, p).
class FiniteField {
 public:
  using Elem = std::vector<long>;

  static FFPtr prime(long p);
  /// Builds F_p[a]/(m); throws if m is not monic irreducible.
  static FFPtr create(long p, std::vector<long> modulus);

  long p() const { return p_; }
  int degree() const { return d_; }
  const std::vector<long>& modulus() const { return m_; }
  Int order() const;

  Elem zero() const { return Elem(d_, 0); }
  Elem one() const;
  Elem from_int(long n) const;
  /// The class of a; for the prime field this is 0.
  Elem gen() const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, const Int& e) const;
  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const { return eq(a, one()); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem random(std::mt19937_64& rng) const;
  /// Element with coordinates given by the base-p digits of n.
  Elem from_index(uint64_t n) const;
  std::string str(const Elem& a) const;

  bool same_as(const FiniteField& o) const { return p_ == o.p_ && m_ == o.m_; }

 private:
  FiniteField(long p, std::vector<long> m);
  long p_;
  int d_;
  std::vector<long> m_;  // monic, degree d
};

using FFPoly = PolyOf<FiniteField>;

/// Prime-field polynomial with coefficients in [0, p) reduced from integers.
FFPoly ff_poly_from_ints(const FiniteField& K, const std::vector<long>& c);
std::string ff_poly_str(const FiniteField& K, const FFPoly& f, const std::string& var = "t");
/// Lexicographic order on coefficient tuples (degree first), used for deterministic choices.
bool ff_poly_less(const FFPoly& a, const FFPoly& b);

bool ff_is_irreducible(const FiniteField& K, const FFPoly& f);
/// Monic irreducible factors with multiplicities, sorted by ff_poly_less.
std::vector<std::pair<FFPoly, int>> ff_factor(const FiniteField& K, const FFPoly& f);
/// Roots of f in K, sorted.
std::vector<FiniteField::Elem> ff_roots(const FiniteField& K, const FFPoly& f);
/// The least monic irreducible polynomial of degree d over F_p in ff_poly_less order.
std::vector<long> find_irreducible(long p, int d);

/// An extension L = K[z]/(psi) realized as a flat finite field.
struct FFExtension {
  FFPtr base;
  FFPtr field;
  FFPoly psi;
  FiniteField::Elem root;   // image of z
  FiniteField::Elem alpha;  // image of the generator of base
  // Inverse of the matrix whose columns are alpha^i root^j, for decompose().
  std::vector<std::vector<long>> inv_basis;

  FiniteField::Elem embed(const FiniteField::Elem& a) const;
  /// Coordinates (c_j) in base with x = sum_j c_j root^j.
  std::vector<FiniteField::Elem> decompose(const FiniteField::Elem& x) const;
};

/// Extends K by a root of the monic irreducible psi.
FFExtension ff_extend(const FFPtr& K, const FFPoly& psi);

}  // namespace regdiff
