#include "regdiff/qpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace regdiff {

QPoly::QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
QPoly::QPoly(const Rat& c) : c_{c} { trim(); }
QPoly::QPoly(long c) : c_{Rat(c)} { trim(); }

QPoly QPoly::monomial(const Rat& c, int deg) {
  std::vector<Rat> v(deg + 1, Rat(0));
  v[deg] = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat QPoly::operator()(const Rat& t) const {
  Rat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
  return r;
}

QPoly QPoly::compose(const QPoly& g) const {
  QPoly r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * g + QPoly(*it);
  return r;
}

QPoly QPoly::derivative() const {
  std::vector<Rat> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(Rat(1) / c_.back());
}

QPoly QPoly::scaled(const Rat& c) const {
  std::vector<Rat> v(c_);
  for (auto& a : v) a *= c;
  return QPoly(std::move(v));
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const QPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

bool operator<(const QPoly& a, const QPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    int c = cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string QPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat& a = c_[i];
    if (a == 0) continue;
    Rat mag = abs(a);
    if (first) {
      if (sgn(a) < 0) os << "-";
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (i == 0 || !unit) {
      os << rat_str(mag);
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

QPoly pow(const QPoly& f, unsigned k) {
  QPoly r(1), b = f;
  while (k > 0) {
    if (k & 1U) r *= b;
    k >>= 1U;
    if (k > 0) b *= b;
  }
  return r;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw std::domain_error("QPoly division by zero");
  std::vector<Rat> r = a.coeffs();
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) return {QPoly(), a};
  std::vector<Rat> q(dq + 1, Rat(0));
  Rat inv = Rat(1) / b.lead();
  for (int i = dq; i >= 0; --i) {
    Rat c = r[i + db] * inv;
    q[i] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) r[i + j] -= c * b.coeffs()[j];
  }
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly u = a, v = b;
  while (!v.is_zero()) {
    QPoly r = divmod(u, v).second;
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

Rat resultant(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.degree() < b.degree()) {
    Rat r = resultant(b, a);
    return (a.degree() * b.degree()) % 2 == 0 ? r : Rat(-r);
  }
  if (b.degree() == 0) return rat_pow(b.lead(), a.degree());
  QPoly r = divmod(a, b).second;
  if (r.is_zero()) return 0;
  Rat s = rat_pow(b.lead(), a.degree() - r.degree()) * resultant(b, r);
  return (a.degree() * b.degree()) % 2 == 0 ? s : Rat(-s);
}

bool squarefree_test(const QPoly& f) {
  if (f.is_zero()) return false;
  return gcd(f, f.derivative()).degree() <= 0;
}

QPoly squarefree_part(const QPoly& f) {
  QPoly g = gcd(f, f.derivative());
  return divmod(f, g).first.monic();
}

ExtRat gauss_valuation(const QPoly& f, long p) {
  ExtRat v = ExtRat::inf();
  for (const auto& a : f.coeffs()) v = min(v, valp(a, p));
  return v;
}

Int content_denominator(const QPoly& f) {
  Int d = 1;
  for (const auto& a : f.coeffs()) d = lcm(d, a.get_den());
  return d;
}

QPoly IntegralForm::to_new(const QPoly& h) const {
  return h.compose(QPoly(std::vector<Rat>{shift, rat_pow(Rat(p), -k)}));
}

IntegralForm make_integral(const QPoly& f, long p) {
  if (!f.is_monic()) throw std::invalid_argument("make_integral: polynomial is not monic");
  IntegralForm r;
  r.p = p;
  int d = f.degree();
  long k = 0;
  for (int i = 0; i < d; ++i) {
    ExtRat v = valp(f.coeffs()[i], p);
    if (!v.is_finite() || v.value() >= 0) continue;
    // a_i p^{k (d - i)} must be integral
    Rat need = -v.value() / (d - i);
    k = std::max(k, to_long(ceil_rat(need)));
  }
  r.k = k;
  r.shift = 0;
  std::vector<Rat> c(d + 1);
  Rat P(p);
  for (int i = 0; i <= d; ++i) c[i] = f.coeffs()[i] * rat_pow(P, k * (d - i));
  r.g = QPoly(std::move(c));
  return r;
}

}  // namespace regdiff
