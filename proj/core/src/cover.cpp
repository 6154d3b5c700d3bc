#include "regdiff/cover.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "regdiff/linalg.hpp"
#include "regdiff/sheaf.hpp"

namespace regdiff {

namespace {

using YPoly = YVal::Poly;

YFieldElem trimmed(YFieldElem g) {
  while (!g.empty() && g.back().is_zero()) g.pop_back();
  return g;
}

YFieldElem y_scaled(const YFieldElem& g, const Rat& c) {
  YFieldElem r;
  for (const auto& a : g) r.push_back(a * RatFunc(c));
  return trimmed(r);
}

YFieldElem y_add(const YFieldElem& a, const YFieldElem& b) {
  YFieldElem r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return trimmed(r);
}

/// Numerator polynomial of a Laurent polynomial and its t-adic shift.
std::pair<FFPoly, long> laurent_parts(const FiniteField& k, const QVal::Laurent& l) {
  FFPoly c(l.c.begin(), l.c.end());
  poly_trim(k, c);
  return {c, l.low};
}

std::string x_power(long a) {
  if (a == 0) return "";
  return a == 1 ? "x" : "x^" + std::to_string(a);
}

}  // namespace

// ------------------------------------------------------------ base (Q(x), v)

QxBase::QxBase(QVal v)
    : v_(std::move(v)), k_(ResField::rational(v_.constant_field())) {
  if (v_.is_infinite()) throw std::domain_error("QxBase: infinite pseudovaluation");
  pi_ = mono_to_ratfunc(v_, v_.uniformizer_mono());
}

RatFunc QxBase::pi_pow(long k) const { return rf_pow(pi_, k); }

ResField::Elem QxBase::reduce(const RatFunc& c) const {
  if (c.is_zero()) return k_->zero();
  ExtRat val = value(c);
  if (val > ExtRat(0)) return k_->zero();
  if (val < ExtRat(0)) throw std::domain_error("QxBase::reduce: negative value");
  Rat g = regdiff::value(v_, c.num()).value();
  Mono a = mono_scale(v_.mono(v_.length(), g), -1);
  const FiniteField& k = *v_.constant_field();
  auto [pn, ln] = laurent_parts(k, v_.red(v_.length(), c.num().coeffs(), a));
  auto [pd, ld] = laurent_parts(k, v_.red(v_.length(), c.den().coeffs(), a));
  long shift = ln - ld;
  if (shift > 0) pn = poly_shift(k, pn, static_cast<int>(shift));
  if (shift < 0) pd = poly_shift(k, pd, static_cast<int>(-shift));
  return k_->from_rf(k_->rf().make(pn, pd));
}

RatFunc QxBase::lift(const ResField::Elem& a) const {
  if (a.size() != 1) throw std::domain_error("QxBase::lift: element outside F_q(t)");
  const RatFn& r = a[0];
  if (r.num.empty()) return RatFunc();
  return RatFunc(QPoly(v_.lift(r.num)), QPoly(v_.lift(r.den)));
}

std::string QxBase::poly_str(const std::vector<RatFunc>& f) const { return yelem_str(f); }

std::string yelem_str(const YFieldElem& g0) {
  YFieldElem g = trimmed(g0);
  if (g.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = g.size(); i-- > 0;) {
    if (g[i].is_zero()) continue;
    std::string s = g[i].str();
    std::string term;
    if (i == 0) {
      term = s;
    } else {
      std::string mono = i == 1 ? "y" : "y^" + std::to_string(i);
      bool compound = s.find(' ') != std::string::npos;
      if (s == "1")
        term = mono;
      else if (s == "-1")
        term = "-" + mono;
      else if (compound)
        term = "(" + s + ")*" + mono;
      else
        term = s + "*" + mono;
    }
    if (first)
      os << term;
    else if (term[0] == '-')
      os << " - " << term.substr(1);
    else
      os << " + " << term;
    first = false;
  }
  return os.str();
}

// ------------------------------------------------------------ curve

long SuperellipticCurve::m() const {
  long m = 0;
  while (m <= f.degree() && f.coeff(static_cast<int>(m)) == 0) ++m;
  return m;
}

QPoly SuperellipticCurve::g() const {
  long k = m();
  const auto& c = f.coeffs();
  return QPoly(std::vector<Rat>(c.begin() + k, c.end()));
}

void SuperellipticCurve::validate() const {
  if (!is_prime(p)) throw std::invalid_argument("curve: p = " + std::to_string(p) + " is not prime");
  if (n < 2) throw std::invalid_argument("curve: n must be at least 2");
  if (n % p == 0)
    throw std::invalid_argument("curve: n = " + std::to_string(n) + " is not invertible mod p = " + std::to_string(p));
  if (f.degree() < 3) throw std::invalid_argument("curve: f must have degree at least 3");
  if (f.lead() != 1) throw std::invalid_argument("curve: f is not monic");
  if (gauss_valuation(f, p) < ExtRat(0)) throw std::invalid_argument("curve: f is not p-integral");
  if (m() >= n)
    throw std::invalid_argument("curve: x divides f with multiplicity " + std::to_string(m()) + " >= n");
  QPoly h = g();
  if (h.degree() > 0 && !squarefree_test(h))
    throw std::invalid_argument("curve: f / x^m has a multiple factor");
}

DivisorSpec SuperellipticCurve::divisor() const {
  DivisorSpec D;
  D.p = p;
  if (m() > 0) D.factors.push_back(QPoly(std::vector<Rat>{Rat(0), Rat(1)}));
  QPoly h = g();
  if (h.degree() > 0) D.factors.push_back(h);
  D.include_infinity = true;
  return D;
}

std::string KMonomial::str() const {
  std::string xs = x_power(a);
  std::string ys = b == 0 ? "" : (b == 1 ? "y" : "y^" + std::to_string(b));
  if (xs.empty() && ys.empty()) return "1";
  if (xs.empty()) return ys;
  if (ys.empty()) return xs;
  return xs + "*" + ys;
}

YFieldElem KMonomial::elem() const {
  std::vector<Rat> xc(static_cast<size_t>(a) + 1, Rat(0));
  xc.back() = 1;
  YFieldElem r(static_cast<size_t>(b) + 1);
  r[b] = RatFunc(QPoly(xc));
  return r;
}

std::vector<KMonomial> kbasis(const SuperellipticCurve& c) {
  c.validate();
  long n = c.n, m = c.m(), d = c.f.degree();
  std::vector<KMonomial> out;
  for (long j = 1; j < n; ++j)
    for (long i = 1; n * i < d * (n - j); ++i)
      if (m * (n - j) < n * i) out.push_back({i - 1, j - 1});
  if (out.empty()) throw std::invalid_argument("curve: genus 0");
  return out;
}

// ------------------------------------------------------------ extensions

ExtValuation::ExtValuation(QVal v, QxBasePtr base, YLimit w, long n)
    : v_(std::move(v)), base_(std::move(base)), w_(std::move(w)), n_(n) {
  ExtRat wy = w_.value(YPoly{RatFunc(), RatFunc(1)});
  if (!wy.is_finite()) throw std::logic_error("extension: w(y) is not finite");
  wy_ = wy.value();
  e_ = w_.prefix().e() / v_.e();
  Int L = lcm(Int(v_.e()), wy_.get_den());
  e_index_ = to_long(L) / v_.e();
}

ExtRat ExtValuation::value(const YFieldElem& g) const { return w_.value(trimmed(g)); }

const ResField& ExtValuation::residue_field() const { return *w_.approx().constant_field(); }

ResField::Elem ExtValuation::residue(const YFieldElem& g, const Rat& gamma) const {
  YVal pre = w_.prefix();
  return w_.reduce(trimmed(g), pre.mono(pre.length(), -gamma));
}

bool ExtValuation::orthogonal() const {
  YVal pre = w_.prefix();
  const auto& phi = pre.phi(1);
  return pre.length() == 1 && phi.size() == 2 && phi[0].is_zero() && w_.degree() == n_;
}

ExtRat ExtValuation::shortcut_value(const YFieldElem& g) const {
  ExtRat best = ExtRat::inf();
  for (size_t i = 0; i < g.size(); ++i) {
    if (g[i].is_zero()) continue;
    best = min(best, regdiff::value(v_, g[i]) + ExtRat(Rat(static_cast<long>(i)) * wy_));
  }
  return best;
}

std::string ExtValuation::str() const {
  std::ostringstream os;
  os << "[" << v_.str();
  auto steps = w_.approx().steps();
  for (size_t i = 0; i < steps.size(); ++i) {
    if (i == 0 && steps[0].lambda == ExtRat(0)) continue;
    os << ", w(" << yelem_str(steps[i].phi) << ")=" << steps[i].lambda.str();
  }
  if (!w_.exact()) os << ", ...";
  os << "]";
  return os.str();
}

ExtValuation extend_valuation(const QVal& v, const SuperellipticCurve& c) {
  auto base = std::make_shared<const QxBase>(v);
  YVal g0 = YVal::gauss(base);
  YPoly P(static_cast<size_t>(c.n) + 1, RatFunc());
  P.back() = RatFunc(1);
  P[0] = -RatFunc(c.f);
  auto br = g0.approximants(P, true);
  if (br.empty()) throw std::logic_error("extend_valuation: no branch found");
  ExtValuation w(v, base, YLimit(br[0]), c.n);
  if (ExtRat(w.wy() * c.n) != value(v, c.f))
    throw std::logic_error("extend_valuation: n w(y) differs from v(f) at " + v.str());
  return w;
}

Rat w_of_eta(const QVal& v, const ExtValuation& w, const SuperellipticCurve& c) {
  return order_dx(v) + Rat(w.e() - 1) - Rat(c.n - 1) * w.wy();
}

// ------------------------------------------------------------ reduced bases

std::vector<BasisElem> reduced_basis(const ExtValuation& w, const std::vector<YFieldElem>& basis) {
  const long p = w.v().base().p();
  FFPtr Fp = FiniteField::prime(p);
  const ResField& K = w.residue_field();
  const size_t g = basis.size();
  std::vector<BasisElem> out;
  for (size_t k = 0; k < g; ++k) {
    BasisElem cur{RatVec(g, Rat(0)), trimmed(basis[k]), Rat(0)};
    cur.coords[k] = 1;
    for (int iter = 0;; ++iter) {
      if (iter > 10000) throw std::logic_error("reduced_basis: no termination");
      ExtRat val = w.value(cur.elem);
      if (!val.is_finite()) throw std::invalid_argument("reduced_basis: dependent input");
      cur.value = val.value();
      std::vector<size_t> same;
      std::vector<Rat> scale;
      for (size_t j = 0; j < out.size(); ++j) {
        Rat d = cur.value - out[j].value;
        if (d.get_den() != 1) continue;
        same.push_back(j);
        scale.push_back(rat_pow(Rat(p), to_long(d.get_num())));
      }
      if (same.empty()) break;
      std::vector<ResField::Elem> res{w.residue(cur.elem, cur.value)};
      for (size_t i = 0; i < same.size(); ++i) res.push_back(w.residue(y_scaled(out[same[i]].elem, scale[i]), cur.value));
      auto co = fp_coordinates(K, res);
      auto wrap = [&](const std::vector<long>& r) {
        std::vector<FiniteField::Elem> e;
        for (long c : r) e.push_back(Fp->from_int(c));
        return e;
      };
      std::vector<std::vector<FiniteField::Elem>> vecs;
      for (size_t i = 1; i < co.size(); ++i) vecs.push_back(wrap(co[i]));
      auto sol = linear_solve(*Fp, vecs, wrap(co[0]));
      if (!sol) break;
      for (size_t i = 0; i < same.size(); ++i) {
        long c = (*sol)[i].at(0);
        if (c == 0) continue;
        Rat s = scale[i] * c;
        const BasisElem& b = out[same[i]];
        cur.elem = y_add(cur.elem, y_scaled(b.elem, -s));
        for (size_t r = 0; r < g; ++r) cur.coords[r] -= s * b.coords[r];
      }
    }
    out.push_back(std::move(cur));
  }
  return out;
}

std::vector<BasisElem> module_basis(const ExtValuation& w, const Rat& bound, const std::vector<BasisElem>& reduced) {
  const long p = w.v().base().p();
  std::vector<BasisElem> out;
  for (const auto& b : reduced) {
    long k = to_long(ceil_rat(bound - b.value));
    Rat s = rat_pow(Rat(p), k);
    BasisElem r{b.coords, y_scaled(b.elem, s), b.value + k};
    for (auto& c : r.coords) c *= s;
    out.push_back(std::move(r));
  }
  return out;
}

bool is_reduced(const ExtValuation& w, const std::vector<BasisElem>& basis, int trials, unsigned seed) {
  const long p = w.v().base().p();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-30, 30), expo(-2, 2);
  for (int t = 0; t < trials; ++t) {
    YFieldElem sum;
    ExtRat expect = ExtRat::inf();
    for (const auto& b : basis) {
      Rat a = Rat(coef(rng)) * rat_pow(Rat(p), expo(rng));
      if (a == 0) continue;
      sum = y_add(sum, y_scaled(b.elem, a));
      expect = min(expect, valp(a, p) + ExtRat(b.value));
    }
    if (w.value(sum) != expect) return false;
  }
  return true;
}

// ------------------------------------------------------------ pipeline

ValuationRow valuation_row(const QVal& v, const SuperellipticCurve& c, const std::vector<KMonomial>& kb) {
  ExtValuation w = extend_valuation(v, c);
  ValuationRow row;
  row.v = v;
  row.w = w.str();
  row.wy = w.wy();
  row.e = w.e();
  row.e_index = w.e_index();
  row.vdx = order_dx(v);
  row.weta = row.vdx + Rat(row.e - 1) - Rat(c.n - 1) * row.wy;
  std::vector<YFieldElem> b0;
  std::vector<std::string> labels;
  for (const auto& m : kb) {
    b0.push_back(m.elem());
    labels.push_back(m.str());
  }
  row.reduced = reduced_basis(w, b0);
  row.module = module_basis(w, -row.weta, row.reduced);
  std::vector<RatVec> gens;
  for (const auto& b : row.module) gens.push_back(b.coords);
  row.lattice = DiffLattice(c.p, labels, gens);
  return row;
}

DifferentialsResult integral_basis(const SuperellipticCurve& c, const std::vector<size_t>& order) {
  c.validate();
  DifferentialsResult res;
  res.curve = c;
  res.model = alg31(c.divisor());
  res.kb = kbasis(c);
  for (size_t i : res.model.finite()) res.rows.push_back(valuation_row(res.model.points[i].val(), c, res.kb));
  std::vector<size_t> ord = order;
  if (ord.empty())
    for (size_t i = 0; i < res.rows.size(); ++i) ord.push_back(i);
  if (ord.size() != res.rows.size()) throw std::invalid_argument("integral_basis: order has the wrong length");
  res.lattice = res.rows.at(ord[0]).lattice;
  for (size_t k = 1; k < ord.size(); ++k) res.lattice = intersect_lattices(res.lattice, res.rows.at(ord[k]).lattice);
  return res;
}

std::vector<std::string> DifferentialsResult::basis_strings() const {
  std::vector<std::string> out;
  for (size_t j = 0; j < lattice.rank(); ++j) out.push_back(lattice.column_str(j));
  return out;
}

nlohmann::json DifferentialsResult::to_json() const {
  using nlohmann::json;
  json kbj = json::array();
  for (const auto& m : kb) kbj.push_back(m.str());
  json rowsj = json::array();
  for (const auto& r : rows) {
    json red = json::array(), mod = json::array();
    for (const auto& b : r.reduced) red.push_back({{"element", yelem_str(b.elem)}, {"value", rat_str(b.value)}});
    for (const auto& b : r.module) mod.push_back({{"element", yelem_str(b.elem)}, {"value", rat_str(b.value)}});
    rowsj.push_back({{"v", r.v.str()},
                     {"w", r.w},
                     {"w_y", rat_str(r.wy)},
                     {"e", r.e},
                     {"v_dx", rat_str(r.vdx)},
                     {"w_eta", rat_str(r.weta)},
                     {"reduced_basis", red},
                     {"module_basis", mod}});
  }
  json matrix = json::array();
  for (const auto& col : lattice.basis()) {
    json cj = json::array();
    for (const auto& x : col) cj.push_back(rat_str(x));
    matrix.push_back(cj);
  }
  return {{"p", curve.p},
          {"n", curve.n},
          {"f", curve.f.str()},
          {"eta", curve.n == 2 ? "dx/y" : "dx/y^" + std::to_string(curve.n - 1)},
          {"kbasis", kbj},
          {"model", model.to_json()},
          {"valuations", rowsj},
          {"basis", basis_strings()},
          {"lattice", {{"labels", lattice.labels()}, {"columns", matrix}}}};
}

}  // namespace regdiff
