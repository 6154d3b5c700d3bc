#include "regdiff/qvaluation.hpp"

#include <stdexcept>

namespace regdiff {

QBase::QBase(long p) : p_(p), fp_(FiniteField::prime(p)) {
  if (!is_prime(p)) throw std::invalid_argument("QBase: p must be prime");
}

FiniteField::Elem QBase::reduce(const Rat& c) const {
  ExtRat v = value(c);
  if (v < ExtRat(0)) throw std::domain_error("reduction of an element of negative value");
  if (v > ExtRat(0)) return fp_->zero();
  return fp_->from_int(mod_p(c, p_));
}

Rat QBase::lift(const FiniteField::Elem& a) const { return Rat(a.at(0)); }

Rat QBase::round(const Rat& c, const Rat& bound) const {
  if (valp(c, p_) < ExtRat(0)) return c;
  long k = to_long(ceil_rat(bound));
  if (k <= 0) return 0;
  Int M;
  mpz_ui_pow_ui(M.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(k));
  Int num = c.get_num(), den = c.get_den(), inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t()) == 0)
    throw std::logic_error("round: denominator not invertible");
  Int r = (num * inv) % M;
  if (r < 0) r += M;
  if (2 * r > M) r -= M;
  return Rat(r);
}

QBasePtr make_qbase(long p) { return std::make_shared<const QBase>(p); }

QVal gauss_q(long p) { return QVal::gauss(make_qbase(p)); }
QVal gauss_q(const QBasePtr& base) { return QVal::gauss(base); }

QVal make_chain(const QBasePtr& base, const std::vector<std::pair<QPoly, ExtRat>>& steps) {
  QVal v = QVal::gauss(base);
  for (const auto& [phi, lam] : steps) v = v.augment(vec(phi), lam);
  return v;
}

ExtRat value(const QVal& v, const QPoly& f) { return v.value(vec(f)); }

ExtRat value(const QVal& v, const RatFunc& f) {
  if (f.is_zero()) return ExtRat::inf();
  ExtRat a = v.value(vec(f.num()));
  ExtRat b = v.value(vec(f.den()));
  if (b.is_inf()) return a.is_inf() ? throw std::domain_error("value of 0/0") : ExtRat::neg_inf();
  return a - b;
}

ExtRat value(const QLimit& v, const QPoly& f) { return v.value(vec(f)); }

RatFunc mono_to_ratfunc(const QVal& v, const Mono& a) {
  auto m = v.mono_eval(a);
  return RatFunc(QPoly(m.num).scaled(m.coef), QPoly(m.den));
}

}  // namespace regdiff
