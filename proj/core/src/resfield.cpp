#include "regdiff/resfield.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace regdiff {

// ---------------------------------------------------------------- RatFnField

RatFn RatFnField::zero() const { return RatFn{{}, {k_->one()}}; }
RatFn RatFnField::one() const { return RatFn{{k_->one()}, {k_->one()}}; }

RatFn RatFnField::from_const(const FiniteField::Elem& c) const {
  return make(poly_const(*k_, c), {k_->one()});
}

RatFn RatFnField::from_poly(const FFPoly& f) const { return make(f, {k_->one()}); }

RatFn RatFnField::t() const { return from_poly(poly_x(*k_)); }

RatFn RatFnField::make(FFPoly num, FFPoly den) const {
  const FiniteField& K = *k_;
  poly_trim(K, num);
  poly_trim(K, den);
  if (den.empty()) throw std::domain_error("F_q(t): zero denominator");
  if (num.empty()) return zero();
  FFPoly g = poly_gcd(K, num, den);
  if (g.size() > 1) {
    num = poly_divmod(K, num, g).first;
    den = poly_divmod(K, den, g).first;
  }
  auto lc = K.inv(den.back());
  return RatFn{poly_scale(K, num, lc), poly_scale(K, den, lc)};
}

RatFn RatFnField::add(const RatFn& a, const RatFn& b) const {
  const FiniteField& K = *k_;
  if (a.den == b.den) return make(poly_add(K, a.num, b.num), a.den);
  return make(poly_add(K, poly_mul(K, a.num, b.den), poly_mul(K, b.num, a.den)),
              poly_mul(K, a.den, b.den));
}

RatFn RatFnField::sub(const RatFn& a, const RatFn& b) const { return add(a, neg(b)); }

RatFn RatFnField::neg(const RatFn& a) const {
  return RatFn{poly_scale(*k_, a.num, k_->neg(k_->one())), a.den};
}

RatFn RatFnField::mul(const RatFn& a, const RatFn& b) const {
  const FiniteField& K = *k_;
  return make(poly_mul(K, a.num, b.num), poly_mul(K, a.den, b.den));
}

RatFn RatFnField::inv(const RatFn& a) const {
  if (a.num.empty()) throw std::domain_error("F_q(t): inverse of zero");
  return make(a.den, a.num);
}

std::string RatFnField::str(const RatFn& a, const std::string& var) const {
  std::string n = ff_poly_str(*k_, a.num, var);
  if (a.den.size() == 1) return n;
  return "(" + n + ")/(" + ff_poly_str(*k_, a.den, var) + ")";
}

bool ratfn_less(const RatFn& a, const RatFn& b) {
  if (ff_poly_less(a.num, b.num)) return true;
  if (ff_poly_less(b.num, a.num)) return false;
  return ff_poly_less(a.den, b.den);
}

// ---------------------------------------------------------------- ResField

ResField::ResField(FFPtr k, RFPoly h) : rf_(std::move(k)), h_(std::move(h)) {
  L_ = h_.empty() ? 1 : poly_deg<RatFnField>(h_);
}

ResFieldPtr ResField::rational(FFPtr k) {
  return ResFieldPtr(new ResField(std::move(k), {}));
}

ResFieldPtr ResField::layered(FFPtr k, RFPoly h) {
  RatFnField rf(k);
  poly_trim(rf, h);
  if (poly_deg<RatFnField>(h) < 2) throw std::invalid_argument("ResField: layer of degree < 2");
  h = poly_monic(rf, h);
  return ResFieldPtr(new ResField(std::move(k), std::move(h)));
}

ResField::Elem ResField::zero() const { return Elem(L_, rf_.zero()); }

ResField::Elem ResField::one() const { return from_rf(rf_.one()); }

ResField::Elem ResField::from_rf(const RatFn& a) const {
  Elem r = zero();
  r[0] = a;
  return r;
}

ResField::Elem ResField::s() const {
  if (!has_layer()) throw std::domain_error("ResField: no algebraic layer");
  Elem r = zero();
  r[1] = rf_.one();
  return r;
}

RFPoly ResField::to_poly(const Elem& a) const {
  RFPoly f(a.begin(), a.end());
  poly_trim(rf_, f);
  return f;
}

ResField::Elem ResField::from_poly(RFPoly f) const {
  if (has_layer()) f = poly_mod(rf_, f, h_);
  Elem r = zero();
  for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  return r;
}

ResField::Elem ResField::add(const Elem& a, const Elem& b) const {
  Elem r(L_);
  for (int i = 0; i < L_; ++i) r[i] = rf_.add(a[i], b[i]);
  return r;
}

ResField::Elem ResField::sub(const Elem& a, const Elem& b) const {
  Elem r(L_);
  for (int i = 0; i < L_; ++i) r[i] = rf_.sub(a[i], b[i]);
  return r;
}

ResField::Elem ResField::neg(const Elem& a) const {
  Elem r(L_);
  for (int i = 0; i < L_; ++i) r[i] = rf_.neg(a[i]);
  return r;
}

ResField::Elem ResField::mul(const Elem& a, const Elem& b) const {
  if (!has_layer()) return {rf_.mul(a[0], b[0])};
  return from_poly(poly_mul(rf_, to_poly(a), to_poly(b)));
}

ResField::Elem ResField::inv(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("ResField: inverse of zero");
  if (!has_layer()) return {rf_.inv(a[0])};
  auto [g, s, t] = poly_xgcd(rf_, to_poly(a), h_);
  if (poly_deg<RatFnField>(g) != 0) throw std::domain_error("ResField: layer polynomial is reducible");
  return from_poly(s);
}

ResField::Elem ResField::pow(const Elem& a, long e) const {
  Elem base = e < 0 ? inv(a) : a;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Elem r = one();
  while (k > 0) {
    if (k & 1UL) r = mul(r, base);
    k >>= 1UL;
    if (k > 0) base = mul(base, base);
  }
  return r;
}

bool ResField::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](const RatFn& c) { return c.num.empty(); });
}

bool ResField::eq(const Elem& a, const Elem& b) const {
  for (int i = 0; i < L_; ++i)
    if (!rf_.eq(a[i], b[i])) return false;
  return true;
}

std::string ResField::str(const Elem& a) const {
  if (!has_layer()) return rf_.str(a[0]);
  std::ostringstream os;
  bool first = true;
  for (int i = L_ - 1; i >= 0; --i) {
    if (a[i].num.empty()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << rf_.str(a[i]) << ")";
    if (i >= 1) os << "*s";
    if (i >= 2) os << "^" << i;
  }
  return first ? "0" : os.str();
}

bool ResField::same_as(const ResField& o) const {
  if (!constants()->same_as(*o.constants())) return false;
  return poly_eq(rf_, h_, o.h_);
}

bool res_poly_less(const ResPoly& a, const ResPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = a.size(); i-- > 0;) {
    for (size_t j = 0; j < a[i].size(); ++j) {
      if (ratfn_less(a[i][j], b[i][j])) return true;
      if (ratfn_less(b[i][j], a[i][j])) return false;
    }
  }
  return false;
}

std::string res_poly_str(const ResField& K, const ResPoly& f, const std::string& var) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = poly_deg<ResField>(f); i >= 0; --i) {
    if (K.is_zero(f[i])) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << K.str(f[i]) << ")";
    if (i >= 1) os << "*" << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

// ---------------------------------------------------------------- factoring

namespace {

// Factors z^m - a over F_q(t), p not dividing m.
std::vector<std::pair<ResPoly, int>> factor_binomial(const ResField& K, long m, const RatFn& a) {
  const FiniteField& k = *K.constants();
  const RatFnField& rf = K.rf();
  if (m % k.p() == 0) throw std::domain_error("res_factor: binomial degree divisible by p");

  auto num_f = ff_factor(k, a.num);
  auto den_f = ff_factor(k, a.den);
  FiniteField::Elem c = a.num.back();  // den is monic
  long g = 0;
  for (const auto& [P, e] : num_f) g = std::gcd(g, static_cast<long>(e));
  for (const auto& [P, e] : den_f) g = std::gcd(g, static_cast<long>(e));

  long kk = g == 0 ? m : std::gcd(m, g);
  long mp = m / kk;
  // C = prod P^(e/kk), so that a = c * C^kk
  RatFn C = rf.one();
  if (g != 0) {
    FFPoly cn{k.one()}, cd{k.one()};
    for (const auto& [P, e] : num_f) cn = poly_mul(k, cn, poly_pow(k, P, e / kk));
    for (const auto& [P, e] : den_f) cd = poly_mul(k, cd, poly_pow(k, P, e / kk));
    C = rf.make(cn, cd);
  }
  FFPoly Xk(kk + 1, k.zero());
  Xk[kk] = k.one();
  Xk[0] = k.neg(c);
  std::vector<std::pair<ResPoly, int>> out;
  for (const auto& [q, mult] : ff_factor(k, Xk)) {
    int d = poly_deg<FiniteField>(q);
    ResPoly Q(static_cast<size_t>(mp * d + 1), K.zero());
    for (int i = 0; i <= d; ++i) {
      RatFn coef = rf.from_const(q[i]);
      for (int j = 0; j < d - i; ++j) coef = rf.mul(coef, C);
      Q[static_cast<size_t>(mp * i)] = K.from_rf(coef);
    }
    poly_trim(K, Q);
    out.emplace_back(std::move(Q), mult);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return res_poly_less(x.first, y.first); });
  return out;
}

bool is_constant(const RatFn& a) { return a.den.size() == 1 && a.num.size() <= 1; }

ResPoly from_ff(const ResField& K, const FFPoly& q) {
  ResPoly Q;
  for (const auto& c : q) Q.push_back(K.from_const(c));
  return Q;
}

// Factors f = C^D q(z^m / C) with q over F_q and C in F_q(t), the norm form
// taken by factors of binomials.  Irreducibility of each C^d_j q_j(z^m / C)
// follows from the Capelli criterion when the exponents of C are coprime to m.
std::vector<std::pair<ResPoly, int>> factor_norm_form(const ResField& K, const ResPoly& f, long m) {
  const FiniteField& k = *K.constants();
  const RatFnField& rf = K.rf();
  const int d = poly_deg<ResField>(f);
  const long D = d / m;
  const RatFn& f0 = f[0][0];
  auto unsupported = [&]() {
    return std::domain_error("res_factor: unsupported polynomial " + res_poly_str(K, f) + " over F_q(t)");
  };
  auto num_f = ff_factor(k, f0.num);
  auto den_f = ff_factor(k, f0.den);
  FFPoly cn{k.one()}, cd{k.one()};
  long G = 0;
  for (const auto& [P, e] : num_f) {
    if (e % D != 0) throw unsupported();
    cn = poly_mul(k, cn, poly_pow(k, P, static_cast<unsigned>(e / D)));
    G = std::gcd(G, static_cast<long>(e / D));
  }
  for (const auto& [P, e] : den_f) {
    if (e % D != 0) throw unsupported();
    cd = poly_mul(k, cd, poly_pow(k, P, static_cast<unsigned>(e / D)));
    G = std::gcd(G, static_cast<long>(e / D));
  }
  if (G == 0 || std::gcd(G, m) != 1) throw unsupported();
  RatFn C = rf.make(cn, cd);
  FFPoly q(static_cast<size_t>(D) + 1, k.zero());
  RatFn Cpow = rf.one();
  for (long i = D; i >= 0; --i) {
    RatFn qi = rf.div(f[static_cast<size_t>(m * i)][0], Cpow);
    if (!is_constant(qi)) throw unsupported();
    q[static_cast<size_t>(i)] = qi.num.empty() ? k.zero() : qi.num[0];
    Cpow = rf.mul(Cpow, C);
  }
  std::vector<std::pair<ResPoly, int>> out;
  for (const auto& [qj, mult] : ff_factor(k, q)) {
    int dj = poly_deg<FiniteField>(qj);
    ResPoly Q(static_cast<size_t>(m * dj + 1), K.zero());
    for (int i = 0; i <= dj; ++i) {
      RatFn coef = rf.from_const(qj[i]);
      for (int j = 0; j < dj - i; ++j) coef = rf.mul(coef, C);
      Q[static_cast<size_t>(m * i)] = K.from_rf(coef);
    }
    poly_trim(K, Q);
    out.emplace_back(std::move(Q), mult);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return res_poly_less(x.first, y.first); });
  return out;
}

}  // namespace

std::vector<std::pair<ResPoly, int>> res_factor(const ResField& K, const ResPoly& f0) {
  ResPoly f = f0;
  poly_trim(K, f);
  if (f.empty()) throw std::domain_error("res_factor: zero polynomial");
  int d = poly_deg<ResField>(f);
  if (d == 0) return {};
  f = poly_monic(K, f);
  if (d == 1) return {{f, 1}};
  if (K.has_layer()) throw std::domain_error("res_factor: factoring over a second algebraic layer");
  const FiniteField& k = *K.constants();
  if (K.is_zero(f[0])) {
    int s = 0;
    while (K.is_zero(f[s])) ++s;
    auto out = res_factor(K, ResPoly(f.begin() + s, f.end()));
    out.emplace_back(ResPoly{K.zero(), K.one()}, s);
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return res_poly_less(x.first, y.first); });
    return out;
  }
  bool constant = true;
  long m = 0;
  for (int i = 0; i <= d; ++i) {
    if (K.is_zero(f[i])) continue;
    constant = constant && is_constant(f[i][0]);
    m = std::gcd(m, static_cast<long>(i));
  }
  if (constant) {
    FFPoly q;
    for (const auto& c : f) q.push_back(c[0].num.empty() ? k.zero() : c[0].num[0]);
    std::vector<std::pair<ResPoly, int>> out;
    for (const auto& [qj, mult] : ff_factor(k, q)) out.emplace_back(from_ff(K, qj), mult);
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return res_poly_less(x.first, y.first); });
    return out;
  }
  if (m == d) return factor_binomial(K, d, K.rf().neg(f[0][0]));
  return factor_norm_form(K, f, m);
}

// ---------------------------------------------------------------- extensions

ResField::Elem ResExtension::embed(const ResField::Elem& a) const {
  if (field.get() == base.get()) return a;
  return field->from_rf(a[0]);
}

std::vector<ResField::Elem> ResExtension::decompose(const ResField::Elem& x) const {
  if (field.get() == base.get()) return {x};
  std::vector<ResField::Elem> r;
  for (const auto& c : x) r.push_back(base->from_rf(c));
  return r;
}

ResExtension res_extend(const ResFieldPtr& K, const ResPoly& psi0) {
  ResPoly psi = poly_monic(*K, psi0);
  int d = poly_deg<ResField>(psi);
  if (d < 1) throw std::invalid_argument("res_extend: constant polynomial");
  ResExtension E;
  E.base = K;
  E.psi = psi;
  if (d == 1) {
    E.field = K;
    E.root = K->neg(psi[0]);
    return E;
  }
  if (K->has_layer()) throw std::domain_error("residue field tower deeper than one algebraic layer");
  RFPoly h;
  for (const auto& c : psi) h.push_back(c[0]);
  E.field = ResField::layered(K->constants(), h);
  E.root = E.field->s();
  return E;
}

std::vector<std::vector<long>> fp_coordinates(const ResField& K,
                                              const std::vector<ResField::Elem>& elems) {
  const FiniteField& k = *K.constants();
  FFPoly D{k.one()};
  for (const auto& e : elems)
    for (const auto& c : e) {
      FFPoly g = poly_gcd(k, D, c.den);
      D = poly_mul(k, D, poly_divmod(k, c.den, g).first);
    }
  std::vector<std::vector<FFPoly>> nums;
  size_t width = 1;
  for (const auto& e : elems) {
    std::vector<FFPoly> row;
    for (const auto& c : e) {
      FFPoly n = poly_mul(k, c.num, poly_divmod(k, D, c.den).first);
      width = std::max(width, n.size());
      row.push_back(std::move(n));
    }
    nums.push_back(std::move(row));
  }
  std::vector<std::vector<long>> out;
  for (const auto& row : nums) {
    std::vector<long> v;
    for (const auto& n : row)
      for (size_t j = 0; j < width; ++j) {
        FiniteField::Elem c = j < n.size() ? n[j] : k.zero();
        v.insert(v.end(), c.begin(), c.end());
      }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace regdiff
