#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "regdiff/lattice.hpp"
#include "regdiff/plmodel.hpp"
#include "regdiff/qvaluation.hpp"
#include "regdiff/resfield.hpp"

namespace regdiff {

/// (Q(x), v) for a finite MacLane valuation v, as a valued base for the engine.
/// Polynomials over this base are polynomials in y.
class QxBase {
 public:
  using Field = QRatField;
  using RF = ResField;
  using Ext = ResExtension;

  explicit QxBase(QVal v);

  const QVal& v() const { return v_; }
  const QRatField& field() const { return field_; }
  ExtRat value(const RatFunc& c) const { return regdiff::value(v_, c); }
  long e() const { return v_.e(); }
  /// pi^k for the uniformizer pi of v.
  RatFunc pi_pow(long k) const;
  const ResFieldPtr& residue_field() const { return k_; }
  ResField::Elem reduce(const RatFunc& c) const;
  RatFunc lift(const ResField::Elem& a) const;
  ResExtension extend(const ResFieldPtr& K, const ResPoly& psi) const { return res_extend(K, psi); }
  std::vector<std::pair<ResPoly, int>> factor(const ResField& K, const ResPoly& f) const {
    return res_factor(K, f);
  }
  RatFunc round(const RatFunc& c, const Rat&) const { return c; }
  std::string poly_str(const std::vector<RatFunc>& f) const;

 private:
  QVal v_;
  QRatField field_;
  ResFieldPtr k_;
  RatFunc pi_;
};

using QxBasePtr = std::shared_ptr<const QxBase>;
using YVal = InductiveValuation<QxBase>;
using YLimit = LimitValuation<QxBase>;

/// Sum_i a_i y^i with a_i in Q(x); y-degree below n.
using YFieldElem = std::vector<RatFunc>;

std::string yelem_str(const YFieldElem& g);

/// y^n = f(x) over Q, studied at the prime p.
struct SuperellipticCurve {
  long p = 0;
  long n = 0;
  QPoly f;

  /// Throws std::invalid_argument unless p is prime, n >= 2, gcd(n, p) = 1,
  /// f is monic and integral of degree >= 3, and f = x^m g with g squarefree,
  /// x not dividing g and m < n.
  void validate() const;
  /// The exponent m of x in f.
  long m() const;
  /// f / x^m.
  QPoly g() const;
  /// Branch divisor factors: x when m > 0, and g when nonconstant.
  DivisorSpec divisor() const;
};

/// A monomial x^a y^b of the differential basis, relative to eta = dx / y^(n-1).
struct KMonomial {
  long a = 0;
  long b = 0;
  std::string str() const;
  YFieldElem elem() const;
};

/// Interior lattice points of the Newton polygon of y^n - f, ordered by the y-exponent.
std::vector<KMonomial> kbasis(const SuperellipticCurve& c);

/// One extension w of v to the function field of the curve.
class ExtValuation {
 public:
  ExtValuation(QVal v, QxBasePtr base, YLimit w, long n);

  const QVal& v() const { return v_; }
  const YLimit& chain() const { return w_; }
  ExtRat value(const YFieldElem& g) const;
  const Rat& wy() const { return wy_; }
  /// Ramification index [w : v].
  long e() const { return e_; }
  /// Index of (1/e_v)Z in the group generated by it and w(y).
  long e_index() const { return e_index_; }
  /// Residue field k(w).
  const ResField& residue_field() const;
  /// Reduction of g * (monomial of value -gamma), for gamma in the value group.
  ResField::Elem residue(const YFieldElem& g, const Rat& gamma) const;
  /// Whether w(sum a_i y^i) = min(v(a_i) + i w(y)) holds for all elements of y-degree below n.
  bool orthogonal() const;
  /// min_i (v(a_i) + i w(y)).
  ExtRat shortcut_value(const YFieldElem& g) const;
  std::string str() const;

 private:
  QVal v_;
  QxBasePtr base_;
  YLimit w_;
  long n_;
  Rat wy_;
  long e_ = 1;
  long e_index_ = 1;
};

/// The extension reached through the lexicographically least residual factors.
ExtValuation extend_valuation(const QVal& v, const SuperellipticCurve& c);

/// order_dx(v) + e - 1 - (n - 1) w(y).
Rat w_of_eta(const QVal& v, const ExtValuation& w, const SuperellipticCurve& c);

/// Elements with coordinates over a fixed K-basis, carried alongside their values.
struct BasisElem {
  RatVec coords;
  YFieldElem elem;
  Rat value;
};

/// A basis of the same K-space that is reduced with respect to w.
std::vector<BasisElem> reduced_basis(const ExtValuation& w, const std::vector<YFieldElem>& basis);

/// Generators p^k_i f_i, k_i = ceil(bound - w(f_i)), of {g : w(g) >= bound}.
std::vector<BasisElem> module_basis(const ExtValuation& w, const Rat& bound, const std::vector<BasisElem>& reduced);

/// Whether w(sum a_j f_j) = min_j w(a_j f_j) for `trials` random integer vectors a.
bool is_reduced(const ExtValuation& w, const std::vector<BasisElem>& basis, int trials, unsigned seed);

struct ValuationRow {
  QVal v;
  std::string w;
  Rat wy;
  long e = 1;
  /// Value-group index cross-check for e.
  long e_index = 1;
  Rat vdx;
  Rat weta;
  std::vector<BasisElem> reduced;
  std::vector<BasisElem> module;
  DiffLattice lattice;
};

struct DifferentialsResult {
  SuperellipticCurve curve;
  ModelVals model;
  std::vector<KMonomial> kb;
  std::vector<ValuationRow> rows;
  DiffLattice lattice;

  /// Canonical basis elements as strings.
  std::vector<std::string> basis_strings() const;
  nlohmann::json to_json() const;
};

/// Per-valuation data for the node v of the model.
ValuationRow valuation_row(const QVal& v, const SuperellipticCurve& c, const std::vector<KMonomial>& kb);

/// The full pipeline; `order` optionally permutes the per-valuation fold.
DifferentialsResult integral_basis(const SuperellipticCurve& c, const std::vector<size_t>& order = {});

}  // namespace regdiff
