#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "regdiff/finite_field.hpp"
#include "regdiff/maclane.hpp"
#include "regdiff/qpoly.hpp"
#include "regdiff/ratfunc.hpp"

namespace regdiff {

/// (Q, val_p) as a valued base for the MacLane engine.
class QBase {
 public:
  using Field = QField;
  using RF = FiniteField;
  using Ext = FFExtension;

  explicit QBase(long p);

  long p() const { return p_; }
  const QField& field() const { return field_; }
  ExtRat value(const Rat& c) const { return valp(c, p_); }
  long e() const { return 1; }
  Rat pi_pow(long k) const { return rat_pow(Rat(p_), k); }
  const FFPtr& residue_field() const { return fp_; }
  FiniteField::Elem reduce(const Rat& c) const;
  Rat lift(const FiniteField::Elem& a) const;
  FFExtension extend(const FFPtr& K, const FFPoly& psi) const { return ff_extend(K, psi); }
  std::vector<std::pair<FFPoly, int>> factor(const FiniteField& K, const FFPoly& f) const {
    return ff_factor(K, f);
  }
  /// The integer r in (-p^k/2, p^k/2] congruent to c modulo p^k, k = ceil(bound).
  Rat round(const Rat& c, const Rat& bound) const;
  std::string poly_str(const std::vector<Rat>& f) const { return QPoly(f).str(); }

 private:
  long p_;
  QField field_;
  FFPtr fp_;
};

using QBasePtr = std::shared_ptr<const QBase>;
using QVal = InductiveValuation<QBase>;
using QLimit = LimitValuation<QBase>;

QBasePtr make_qbase(long p);
QVal gauss_q(long p);
QVal gauss_q(const QBasePtr& base);

inline const std::vector<Rat>& vec(const QPoly& f) { return f.coeffs(); }
inline QPoly qpoly(const std::vector<Rat>& f) { return QPoly(f); }

/// Builds [v0, v(phi_1)=lambda_1, ...] by successive validated augmentations.
QVal make_chain(const QBasePtr& base, const std::vector<std::pair<QPoly, ExtRat>>& steps);

ExtRat value(const QVal& v, const QPoly& f);
/// v(num) - v(den); infinite pseudovaluations may give +inf or -inf.
ExtRat value(const QVal& v, const RatFunc& f);
ExtRat value(const QLimit& v, const QPoly& f);

/// pi^k phi_1^a_1 ... phi_n^a_n as an element of Q(x).
RatFunc mono_to_ratfunc(const QVal& v, const Mono& a);

}  // namespace regdiff
