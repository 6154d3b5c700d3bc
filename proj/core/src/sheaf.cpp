#include "regdiff/sheaf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "regdiff/linalg.hpp"

namespace regdiff {

// ------------------------------------------------------------ BiPoly

BiPoly BiPoly::constant(const Rat& c) {
  BiPoly r;
  r.add_term(0, 0, c);
  return r;
}

BiPoly BiPoly::T1() {
  BiPoly r;
  r.add_term(1, 0, 1);
  return r;
}

BiPoly BiPoly::T2() {
  BiPoly r;
  r.add_term(0, 1, 1);
  return r;
}

Rat BiPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rat(0) : it->second;
}

void BiPoly::add_term(int i, int j, const Rat& c) {
  if (c == 0) return;
  Rat& t = terms_[{i, j}];
  t += c;
  if (t == 0) terms_.erase({i, j});
}

int BiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

int BiPoly::degree_T1() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

int BiPoly::degree_T2() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.second);
  return d;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  BiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e.first, e.second, c);
  return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + o.scaled(-1); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
  return r;
}

BiPoly BiPoly::scaled(const Rat& c) const {
  BiPoly r;
  if (c == 0) return r;
  for (const auto& [e, a] : terms_) r.terms_[e] = a * c;
  return r;
}

BiPoly BiPoly::d_T1() const {
  BiPoly r;
  for (const auto& [e, c] : terms_)
    if (e.first > 0) r.add_term(e.first - 1, e.second, c * e.first);
  return r;
}

BiPoly BiPoly::d_T2() const {
  BiPoly r;
  for (const auto& [e, c] : terms_)
    if (e.second > 0) r.add_term(e.first, e.second - 1, c * e.second);
  return r;
}

Rat BiPoly::operator()(const Rat& a, const Rat& b) const {
  Rat s = 0;
  for (const auto& [e, c] : terms_) s += c * rat_pow(a, e.first) * rat_pow(b, e.second);
  return s;
}

RatFunc BiPoly::eval(const RatFunc& a, const RatFunc& b) const {
  RatFunc s;
  for (const auto& [e, c] : terms_) s += RatFunc(c) * rf_pow(a, e.first) * rf_pow(b, e.second);
  return s;
}

std::optional<BiPoly> BiPoly::divide(const BiPoly& d) const {
  if (d.is_zero()) throw std::domain_error("BiPoly: division by zero");
  BiPoly rem = *this, q;
  auto [le, lc] = *d.terms_.rbegin();
  while (!rem.is_zero()) {
    auto [re, rc] = *rem.terms_.rbegin();
    if (re.first < le.first || re.second < le.second) return std::nullopt;
    BiPoly t;
    t.add_term(re.first - le.first, re.second - le.second, rc / lc);
    q = q + t;
    rem = rem - t * d;
  }
  return q;
}

BiPoly BiPoly::normalized() const {
  if (is_zero()) return *this;
  Int l = 1, g = 0;
  for (const auto& [e, c] : terms_) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  for (const auto& [e, c] : terms_) {
    Int n = Int(c * Rat(l));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rat s = Rat(l) / Rat(g);
  if (terms_.rbegin()->second < 0) s = -s;
  return scaled(s);
}

std::string BiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [e, c] = *it;
    Rat a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool mono = e.first > 0 || e.second > 0;
    if (!mono || a != 1) os << rat_str(a) << (mono ? "*" : "");
    std::string sep;
    if (e.first > 0) {
      os << "T1" << (e.first > 1 ? "^" + std::to_string(e.first) : "");
      sep = "*";
    }
    if (e.second > 0) os << sep << "T2" << (e.second > 1 ? "^" + std::to_string(e.second) : "");
  }
  return os.str();
}

// ------------------------------------------------------------ elimination

namespace {

QPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  QPoly out;
  for (size_t i = 0; i < xs.size(); ++i) {
    QPoly term(ys[i]);
    for (size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      term = term * QPoly(std::vector<Rat>{-xs[j], Rat(1)}).scaled(1 / (xs[i] - xs[j]));
    }
    out += term;
  }
  return out;
}

/// Coefficients of T*den - num padded to the formal degree d.
std::vector<Rat> pencil(const RatFunc& t, const Rat& T, int d) {
  QPoly p = t.den().scaled(T) - t.num();
  std::vector<Rat> c(static_cast<size_t>(d) + 1, Rat(0));
  for (int i = 0; i <= p.degree(); ++i) c[i] = p.coeff(i);
  return c;
}

Rat sylvester_resultant(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
  size_t sz = static_cast<size_t>(m + n);
  if (sz == 0) return 1;
  MatrixOf<QField> M(sz, std::vector<Rat>(sz, Rat(0)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) M[r][r + m - i] = a[i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) M[n + r][r + n - i] = b[i];
  return determinant(QField{}, M);
}

}  // namespace

BiPoly elimination_resultant(const RatFunc& t1, const RatFunc& t2) {
  int d1 = std::max(t1.num().degree(), t1.den().degree());
  int d2 = std::max(t2.num().degree(), t2.den().degree());
  d1 = std::max(d1, 0);
  d2 = std::max(d2, 0);
  // Degree in T1 is at most d2, in T2 at most d1.
  std::vector<Rat> xs1, xs2;
  for (int i = 0; i <= d2; ++i) xs1.emplace_back(i);
  for (int j = 0; j <= d1; ++j) xs2.emplace_back(j);
  std::vector<QPoly> in_T2;  // for each T1 sample, the polynomial in T2
  for (const auto& a : xs1) {
    std::vector<Rat> ys;
    for (const auto& b : xs2) ys.push_back(sylvester_resultant(pencil(t1, a, d1), pencil(t2, b, d2)));
    in_T2.push_back(interpolate(xs2, ys));
  }
  BiPoly R;
  for (int j = 0; j <= d1; ++j) {
    std::vector<Rat> ys;
    for (const auto& q : in_T2) ys.push_back(q.coeff(j));
    QPoly in_T1 = interpolate(xs1, ys);
    for (int i = 0; i <= in_T1.degree(); ++i) R.add_term(i, j, in_T1.coeff(i));
  }
  return R;
}

BiPoly defining_polynomial(const RatFunc& t1, const RatFunc& t2) {
  BiPoly R = elimination_resultant(t1, t2);
  if (R.is_zero()) throw std::logic_error("defining_polynomial: degenerate elimination");
  int bound = R.total_degree();
  for (int D = 1; D <= bound; ++D) {
    std::vector<std::pair<int, int>> monos;
    for (int s = 0; s <= D; ++s)
      for (int i = 0; i <= s; ++i) monos.emplace_back(i, s - i);
    // Clear denominators with (den t1)^D (den t2)^D.
    std::vector<QPoly> cols;
    int rows = 0;
    for (auto [i, j] : monos) {
      QPoly c = pow(t1.num(), i) * pow(t1.den(), D - i) * pow(t2.num(), j) * pow(t2.den(), D - j);
      rows = std::max(rows, c.degree() + 1);
      cols.push_back(c);
    }
    MatrixOf<QField> M(static_cast<size_t>(rows), std::vector<Rat>(monos.size(), Rat(0)));
    for (size_t c = 0; c < cols.size(); ++c)
      for (int r = 0; r <= cols[c].degree(); ++r) M[r][c] = cols[c].coeff(r);
    auto ns = nullspace(QField{}, M, monos.size());
    if (ns.empty()) continue;
    if (ns.size() > 1) throw std::logic_error("defining_polynomial: relation of minimal degree is not unique");
    BiPoly F;
    for (size_t k = 0; k < monos.size(); ++k) F.add_term(monos[k].first, monos[k].second, ns[0][k]);
    F = F.normalized();
    if (!R.divide(F)) throw std::logic_error("defining_polynomial: relation does not divide the resultant");
    return F;
  }
  throw std::logic_error("defining_polynomial: no relation found");
}

DefiningSystem defining_system(const QVal& v, const RatFunc& t1, const RatFunc& t2) {
  if (v.is_infinite()) throw std::domain_error("defining_system: infinite pseudovaluation");
  if (value(v, t1) != ExtRat(Rat(1) / v.e()))
    throw std::invalid_argument("defining_system: " + t1.str() + " is not a uniformizer for " + v.str());
  if (value(v, t2) != ExtRat(0))
    throw std::invalid_argument("defining_system: " + t2.str() + " is not a unit for " + v.str());
  return {v, t1, t2, defining_polynomial(t1, t2)};
}

DefiningSystem defining_system(const QVal& v) {
  if (v.is_infinite()) throw std::domain_error("defining_system: infinite pseudovaluation");
  return defining_system(v, mono_to_ratfunc(v, v.uniformizer_mono()), mono_to_ratfunc(v, v.generator_mono()));
}

std::pair<std::optional<Rat>, std::optional<Rat>> order_dx_both(const DefiningSystem& ds) {
  std::optional<Rat> via_t2, via_t1;
  BiPoly F1 = ds.F.d_T1(), F2 = ds.F.d_T2();
  if (!F2.is_zero()) {
    ExtRat a = value(ds.v, F2.eval(ds.t1, ds.t2)), b = value(ds.v, ds.t1.derivative());
    if (a.is_finite() && b.is_finite()) via_t2 = a.value() - b.value();
  }
  if (!F1.is_zero()) {
    ExtRat a = value(ds.v, F1.eval(ds.t1, ds.t2)), b = value(ds.v, ds.t2.derivative());
    if (a.is_finite() && b.is_finite()) via_t1 = a.value() - b.value();
  }
  return {via_t2, via_t1};
}

Rat order_dx(const DefiningSystem& ds) {
  auto [a, b] = order_dx_both(ds);
  if (a) return *a;
  if (b) return *b;
  throw std::logic_error("order_dx: both partial derivatives vanish on the system");
}

Rat order_dx(const QVal& v) { return order_dx(defining_system(v)); }

}  // namespace regdiff
