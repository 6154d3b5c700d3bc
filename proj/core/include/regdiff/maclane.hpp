#pragma once

// Inductive (MacLane) valuations on K[x] over a discretely valued field K.
//
// The engine is parameterized by a base policy B describing (K, v_K):
//   using Field;  Field::Elem  : field arithmetic on K (polyops interface)
//   using RF; using Ext        : residue field class and extension record
//   const Field& field() const
//   ExtRat value(const Elem&) const
//   long e() const             : v_K(K^*) = (1/e) Z
//   Elem pi_pow(long k) const  : k-th power of a uniformizer
//   std::shared_ptr<const RF> residue_field() const
//   RF::Elem reduce(const Elem&) const   (value >= 0; zero if value > 0)
//   Elem lift(const RF::Elem&) const
//   Ext extend(ptr, const PolyOf<RF>&) const
//   std::vector<std::pair<PolyOf<RF>, int>> factor(const RF&, const PolyOf<RF>&) const
//   Elem round(const Elem& c, const Rat& bound) const
//   std::string poly_str(const PolyOf<Field>&) const
//
// Notation: a chain [(phi_1, lambda_1), ..., (phi_n, lambda_n)] with
// deg phi_1 = 1 and strictly increasing degrees.  The Gauss valuation is
// the single step (x, 0).  Gamma_i = <1/e, lambda_1, ..., lambda_i> has
// denominator e_i and tau_i = e_i / e_{i-1}.  A monomial is an exponent
// vector (k, a_1, ..., a_j) standing for pi^k phi_1^a_1 ... phi_j^a_j.

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "regdiff/polyops.hpp"
#include "regdiff/rational.hpp"

namespace regdiff {

using Mono = std::vector<long>;

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

inline Mono mono_add(const Mono& a, const Mono& b) {
  Mono r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}
inline Mono mono_scale(const Mono& a, long c) {
  Mono r(a);
  for (auto& x : r) x *= c;
  return r;
}

template <class B>
class InductiveValuation {
 public:
  using Base = B;
  using BF = typename B::Field;
  using Elem = typename BF::Elem;
  using Poly = PolyOf<BF>;
  using RF = typename B::RF;
  using RFPtr = std::shared_ptr<const RF>;
  using RElem = typename RF::Elem;
  using RPoly = PolyOf<RF>;
  using Ext = typename B::Ext;

  struct Step {
    Poly phi;
    ExtRat lambda;
  };

  /// Laurent polynomial sum_m c[m - low] t^m.
  struct Laurent {
    long low = 0;
    std::vector<RElem> c;
  };

  /// pi^k * num / den with num, den products of chain keys.
  struct MonoValue {
    Elem coef;
    Poly num;
    Poly den;
  };

  static InductiveValuation gauss(std::shared_ptr<const B> base) {
    const BF& F = base->field();
    return from_steps(base, {Step{poly_x(F), ExtRat(0)}});
  }

  /// Builds a valuation from an explicit chain; the chain must already be
  /// in minimal form with key polynomials.
  static InductiveValuation from_steps(std::shared_ptr<const B> base, std::vector<Step> steps) {
    if (steps.empty()) return gauss(base);
    InductiveValuation v;
    v.base_ = std::move(base);
    for (auto& s : steps) v.push_level(std::move(s.phi), s.lambda);
    return v;
  }

  const B& base() const { return *base_; }
  const std::shared_ptr<const B>& base_ptr() const { return base_; }
  const BF& F() const { return base_->field(); }

  /// Number of chain steps (the Gauss valuation has one step).
  int length() const { return static_cast<int>(lv_.size()); }
  const Poly& phi(int i) const { return lv_.at(i - 1).phi; }
  const ExtRat& lambda(int i) const { return lv_.at(i - 1).lambda; }
  const Poly& last_key() const { return lv_.back().phi; }
  const ExtRat& last_lambda() const { return lv_.back().lambda; }
  int last_degree() const { return poly_deg<BF>(lv_.back().phi); }
  bool is_infinite() const { return lv_.back().lambda.is_inf(); }
  bool is_gauss() const { return lv_.size() == 1 && lv_[0].lambda == ExtRat(0); }
  std::vector<Step> steps() const {
    std::vector<Step> r;
    for (const auto& l : lv_) r.push_back(Step{l.phi, l.lambda});
    return r;
  }

  /// Denominator of the value group.
  long e() const { return lv_.back().e; }
  long e_at(int j) const { return j == 0 ? base_->e() : lv_.at(j - 1).e; }
  long tau(int j) const { return lv_.at(j - 1).tau; }
  /// Constant field k' of the residue ring k'[t].
  const RFPtr& constant_field() const { return lv_.back().K; }
  const RFPtr& constant_field_at(int j) const { return lv_.at(j - 1).K; }

  /// The truncated chain of the first j steps (j = 0 gives the Gauss valuation).
  InductiveValuation truncation(int j) const {
    if (j <= 0) return gauss(base_);
    InductiveValuation v;
    v.base_ = base_;
    v.lv_.assign(lv_.begin(), lv_.begin() + j);
    return v;
  }

  /// Number of proper augmentation steps over the Gauss valuation.
  int depth() const { return lv_[0].lambda == ExtRat(0) ? length() - 1 : length(); }

  /// The immediate predecessor; the Gauss valuation is its own predecessor.
  InductiveValuation pred() const { return truncation(length() - 1); }

  /// P(v): the Gauss valuation and all proper truncations, in increasing order.
  std::vector<InductiveValuation> predecessors() const {
    std::vector<InductiveValuation> r;
    if (is_gauss()) return r;
    r.push_back(gauss(base_));
    int start = lv_[0].lambda == ExtRat(0) ? 2 : 1;
    for (int j = start; j < length(); ++j) r.push_back(truncation(j));
    return r;
  }

  // ------------------------------------------------------------ values

  std::vector<Poly> expand(const Poly& f, const Poly& phi) const { return phi_expansion(F(), f, phi); }

  static std::vector<Poly> phi_expansion(const BF& F, const Poly& f, const Poly& phi) {
    if (phi.empty() || !F.eq(phi.back(), F.one()))
      throw std::invalid_argument("phi_expansion: key is not monic");
    if (poly_deg<BF>(phi) < 1) throw std::invalid_argument("phi_expansion: key is constant");
    std::vector<Poly> out;
    Poly r = f;
    while (!r.empty()) {
      auto [q, rem] = poly_divmod(F, r, phi);
      out.push_back(std::move(rem));
      r = std::move(q);
    }
    return out;
  }

  ExtRat value(const Poly& f) const { return value_level(length(), f); }
  ExtRat value(const Elem& c) const { return value_level(length(), poly_const(F(), c)); }

  /// Value under the truncation v_j.
  ExtRat value_level(int j, const Poly& f) const {
    if (f.empty()) return ExtRat::inf();
    if (j == 0) {
      if (poly_deg<BF>(f) > 0) throw std::logic_error("value_level(0) of a nonconstant polynomial");
      return base_->value(f[0]);
    }
    const Level& L = lv_[j - 1];
    if (poly_deg<BF>(f) < poly_deg<BF>(L.phi)) return value_level(j - 1, f);
    auto ex = expand(f, L.phi);
    ExtRat best = ExtRat::inf();
    for (size_t s = 0; s < ex.size(); ++s) {
      if (ex[s].empty()) continue;
      if (s > 0 && L.lambda.is_inf()) continue;
      ExtRat w = value_level(j - 1, ex[s]);
      if (s > 0) w = w + Rat(static_cast<long>(s)) * L.lambda;
      best = min(best, w);
    }
    return best;
  }

  // ------------------------------------------------------------ monomials

  Rat mono_value(const Mono& a) const {
    Rat r = Rat(a.at(0)) / base_->e();
    for (size_t i = 1; i < a.size(); ++i)
      if (a[i] != 0) r += Rat(a[i]) * lv_.at(i - 1).lambda.value();
    return r;
  }

  /// Canonical monomial of value g in levels <= j: exponents a_i in [0, tau_i).
  Mono mono(int j, Rat g) const {
    Mono a(j + 1, 0);
    for (int i = j; i >= 1; --i) {
      const Level& L = lv_[i - 1];
      long prev = e_at(i - 1);
      bool ok = false;
      for (long ai = 0; ai < L.tau; ++ai) {
        Rat rest = g - Rat(ai) * L.lambda.value();
        if (prev % den_long(rest) == 0) {
          a[i] = ai;
          g = rest;
          ok = true;
          break;
        }
      }
      if (!ok) throw std::domain_error("mono: value " + rat_str(g) + " not in the value group");
    }
    Rat k = g * base_->e();
    if (k.get_den() != 1) throw std::domain_error("mono: value not in the value group");
    a[0] = to_long(k.get_num());
    return a;
  }

  MonoValue mono_eval(const Mono& a) const {
    const BF& Fd = F();
    MonoValue r{base_->pi_pow(a.at(0)), Poly{Fd.one()}, Poly{Fd.one()}};
    for (size_t i = 1; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      Poly pw = poly_pow(Fd, lv_.at(i - 1).phi, static_cast<unsigned>(a[i] > 0 ? a[i] : -a[i]));
      if (a[i] > 0)
        r.num = poly_mul(Fd, r.num, pw);
      else
        r.den = poly_mul(Fd, r.den, pw);
    }
    return r;
  }

  /// Exponents of the uniformizer pi^k phi_1^a_1 ... phi_n^a_n with a_i >= 0.
  Mono uniformizer_mono() const {
    if (is_infinite()) throw std::domain_error("uniformizer of an infinite pseudovaluation");
    return mono(length(), Rat(1, e()));
  }

  /// Exponents of the generator witness phi_n^tau / Pi_n of the residue ring.
  Mono generator_mono() const {
    if (is_infinite()) throw std::domain_error("residue ring of an infinite pseudovaluation");
    Mono a = mono_scale(lv_.back().Pi, -1);
    a.push_back(lv_.back().tau);
    return a;
  }

  // ------------------------------------------------------------ reduction

  /// Reduction of f * mono(a), a of length j+1, as a Laurent polynomial in t_j over K_j.
  /// The product must have nonnegative value.
  Laurent red(int j, const Poly& f, const Mono& a) const {
    const Level& L = lv_.at(j - 1);
    if (L.lambda.is_inf()) throw std::domain_error("red at an infinite step");
    const RF& K = *L.K;
    Mono ap(a.begin(), a.begin() + j);
    long aj = a.at(j);
    Rat base_val = mono_value(ap);
    std::vector<std::pair<long, RElem>> terms;
    auto ex = expand(f, L.phi);
    for (size_t s = 0; s < ex.size(); ++s) {
      if (ex[s].empty()) continue;
      long idx = static_cast<long>(s) + aj;
      ExtRat w = value_level(j - 1, ex[s]) + ExtRat(Rat(idx) * L.lambda.value() + base_val);
      if (w < ExtRat(0)) throw std::domain_error("reduction of an element of negative value");
      if (w > ExtRat(0)) continue;
      if (idx % L.tau != 0) throw std::logic_error("red: exponent not divisible by tau");
      long m = idx / L.tau;
      terms.emplace_back(m, cst(j, ex[s], mono_add(ap, mono_scale(L.Pi, m))));
    }
    Laurent r;
    if (terms.empty()) return r;
    long lo = terms[0].first, hi = terms[0].first;
    for (const auto& t : terms) {
      lo = std::min(lo, t.first);
      hi = std::max(hi, t.first);
    }
    r.low = lo;
    r.c.assign(static_cast<size_t>(hi - lo + 1), K.zero());
    for (auto& t : terms) r.c[t.first - lo] = K.add(r.c[t.first - lo], t.second);
    return r;
  }

  /// Reduction of g * mono(b) into K_j, deg g < deg phi_j, b of length j.
  RElem cst(int j, const Poly& g, const Mono& b) const {
    const RF& K = *lv_.at(j - 1).K;
    if (g.empty()) return K.zero();
    if (j == 1) {
      if (poly_deg<BF>(g) > 0) throw std::logic_error("cst: degree too large");
      return base_->reduce(F().mul(g[0], base_->pi_pow(b.at(0))));
    }
    const Ext& E = *lv_[j - 1].ext;
    Laurent l = red(j - 1, g, b);
    return eval_laurent(K, l, E, E.root);
  }

  /// Lift of c in K_j: a polynomial g, deg g < deg phi_j, with cst(j, g, b) = c.
  Poly liftc(int j, const RElem& c, const Mono& b) const {
    const BF& Fd = F();
    const RF& K = *lv_.at(j - 1).K;
    if (K.is_zero(c)) return {};
    if (j == 1) return poly_const(Fd, Fd.mul(base_->lift(c), base_->pi_pow(-b.at(0))));
    const Level& P = lv_[j - 2];
    const Ext& E = *lv_[j - 1].ext;
    long t = P.tau;
    long a = b.at(j - 1);
    Mono bp(b.begin(), b.begin() + (j - 1));
    long shift = ceil_div(a, t);
    long r0 = t * shift - a;
    RElem cp = K.mul(c, rpow(K, E.root, -shift));
    auto d = E.decompose(cp);
    Poly g;
    for (size_t m = 0; m < d.size(); ++m) {
      Poly h = liftc(j - 1, d[m], mono_add(bp, mono_scale(P.Pi, static_cast<long>(m) + shift)));
      if (h.empty()) continue;
      Poly term = poly_mul(Fd, poly_pow(Fd, P.phi, static_cast<unsigned>(t * static_cast<long>(m) + r0)), h);
      g = poly_add(Fd, g, term);
    }
    return g;
  }

  /// Reduction of a value-zero polynomial into k'[t].
  RPoly reduce(const Poly& f) const {
    Laurent l = red(length(), f, Mono(length() + 1, 0));
    if (l.c.empty()) return {};
    if (l.low < 0) throw std::logic_error("reduce: negative power of t");
    RPoly r(static_cast<size_t>(l.low), constant_field()->zero());
    r.insert(r.end(), l.c.begin(), l.c.end());
    return r;
  }

  /// A polynomial of value zero whose reduction is r.
  Poly lift(const RPoly& r) const {
    const BF& Fd = F();
    const Level& L = lv_.back();
    Poly g;
    for (size_t m = 0; m < r.size(); ++m) {
      Poly h = liftc(length(), r[m], mono_scale(L.Pi, static_cast<long>(m)));
      if (h.empty()) continue;
      g = poly_add(Fd, g, poly_mul(Fd, poly_pow(Fd, L.phi, static_cast<unsigned>(L.tau * static_cast<long>(m))), h));
    }
    return g;
  }

  // ------------------------------------------------------------ residual polynomials

  struct Residual {
    long s0 = 0;  // order of the last key
    RPoly R;      // R(0) != 0
    ExtRat value;
  };

  Residual residual(const Poly& f) const { return residual_at(length(), f); }

  Residual residual_at(int j, const Poly& f) const {
    if (f.empty()) throw std::domain_error("residual polynomial of zero");
    const Level& L = lv_.at(j - 1);
    if (L.lambda.is_inf()) throw std::domain_error("residual polynomial at an infinite step");
    auto ex = expand(f, L.phi);
    ExtRat best = ExtRat::inf();
    long s0 = -1;
    ExtRat v0;
    for (size_t s = 0; s < ex.size(); ++s) {
      if (ex[s].empty()) continue;
      ExtRat vs = value_level(j - 1, ex[s]);
      ExtRat w = vs + ExtRat(Rat(static_cast<long>(s)) * L.lambda.value());
      if (w < best) {
        best = w;
        s0 = static_cast<long>(s);
        v0 = vs;
      }
    }
    Mono a = mono_scale(mono(j - 1, v0.value()), -1);
    a.push_back(-s0);
    Laurent l = red(j, f, a);
    if (l.low != 0) throw std::logic_error("residual: unexpected normalization");
    return Residual{s0, RPoly(l.c.begin(), l.c.end()), best};
  }

  // ------------------------------------------------------------ keys

  /// Lifts a monic irreducible psi != t in k'[t] to a key polynomial.
  Poly lift_to_key(const RPoly& psi0) const {
    const BF& Fd = F();
    const RF& K = *constant_field();
    const Level& L = lv_.back();
    if (L.lambda.is_inf()) throw std::domain_error("lift_to_key at an infinite pseudovaluation");
    RPoly psi = poly_monic(K, psi0);
    int d = poly_deg<RF>(psi);
    if (d < 1) throw std::invalid_argument("lift_to_key: constant polynomial");
    if (d == 1 && K.is_zero(psi[0])) return L.phi;
    if (K.is_zero(psi[0])) throw std::invalid_argument("lift_to_key: polynomial is divisible by t");
    auto fac = base_->factor(K, psi);
    if (fac.size() != 1 || fac[0].second != 1) throw std::invalid_argument("lift_to_key: polynomial is reducible");
    Poly phi = poly_pow(Fd, L.phi, static_cast<unsigned>(L.tau * d));
    for (int m = 0; m < d; ++m) {
      Poly h = liftc(length(), psi[m], mono_scale(L.Pi, m - d));
      if (h.empty()) continue;
      phi = poly_add(Fd, phi, poly_mul(Fd, poly_pow(Fd, L.phi, static_cast<unsigned>(L.tau * m)), h));
    }
    return phi;
  }

  bool is_integral(const Poly& f) const {
    for (const auto& c : f)
      if (!F().is_zero(c) && base_->value(c) < ExtRat(0)) return false;
    return true;
  }

  bool is_key(const Poly& phi) const {
    const BF& Fd = F();
    if (is_infinite()) return false;
    if (phi.empty() || poly_deg<BF>(phi) < 1 || !Fd.eq(phi.back(), Fd.one())) return false;
    if (!is_integral(phi)) return false;
    int dn = last_degree();
    int d = poly_deg<BF>(phi);
    if (d % dn != 0) return false;
    long S = d / dn;
    Residual r = residual(phi);
    long dr = poly_deg<RF>(r.R);
    if (d == dn) return r.s0 == 1 || (r.s0 == 0 && lv_.back().tau == 1 && dr == 1);
    if (r.s0 != 0 || dr * lv_.back().tau != S) return false;
    auto fac = base_->factor(*constant_field(), r.R);
    return fac.size() == 1 && fac[0].second == 1 && poly_deg<RF>(fac[0].first) == dr;
  }

  /// f ~_v g: v(f - g) > v(f) = v(g).
  bool is_equivalent(const Poly& f, const Poly& g) const {
    if (f.empty() || g.empty()) throw std::invalid_argument("is_equivalent: zero polynomial");
    ExtRat vf = value(f), vg = value(g);
    return vf == vg && value(poly_sub(F(), f, g)) > vf;
  }

  /// phi |_v f for a key polynomial phi.
  bool v_divides(const Poly& phi, const Poly& f) const {
    if (f.empty()) throw std::invalid_argument("v_divides: zero polynomial");
    if (!is_key(phi)) throw std::invalid_argument("v_divides: not a key polynomial");
    Residual rp = residual(phi);
    Residual rf = residual(f);
    if (rp.s0 > 0) return rf.s0 > 0;
    const RF& K = *constant_field();
    return poly_mod(K, rf.R, poly_monic(K, rp.R)).empty();
  }

  // ------------------------------------------------------------ augmentation

  InductiveValuation augment(const Poly& phi, const ExtRat& lam) const {
    if (!is_key(phi)) throw std::invalid_argument("augment: " + base_->poly_str(phi) + " is not a key polynomial");
    ExtRat mu = value(phi);
    if (lam < mu) throw std::invalid_argument("augment: lambda below the current value");
    if (lam == mu) return *this;
    InductiveValuation w;
    w.base_ = base_;
    int keep = poly_deg<BF>(phi) == last_degree() ? length() - 1 : length();
    w.lv_.assign(lv_.begin(), lv_.begin() + keep);
    w.push_level(phi, lam);
    return w;
  }

  // ------------------------------------------------------------ order

  /// v <= w, for any w providing value(Poly).
  template <class W>
  bool leq(const W& w) const {
    for (const auto& L : lv_)
      if (w.value(L.phi) < L.lambda) return false;
    return true;
  }

  bool operator==(const InductiveValuation& o) const { return leq(o) && o.leq(*this); }

  // ------------------------------------------------------------ approximants

  struct Branch {
    InductiveValuation leaf;  // last key has the degree of the branch factor
    Poly factor;              // exact factor when the leaf is infinite, else the input
    bool exact = false;
    int degree = 0;
  };

  /// Approximants of the irreducible factors of the squarefree polynomial g over
  /// the completion.  Called on the Gauss valuation.  With first_only, only the
  /// branch reached through lexicographically least residual factors is returned.
  std::vector<Branch> approximants(const Poly& g, bool first_only = false) const {
    const BF& Fd = F();
    std::vector<Branch> out;
    struct Item {
      InductiveValuation v;
      bool with_last;
    };
    std::vector<Item> work{{*this, true}};
    while (!work.empty()) {
      Item it = std::move(work.back());
      work.pop_back();
      const InductiveValuation& v = it.v;
      Residual r = v.residual(g);
      std::vector<std::pair<Poly, long>> keys;
      if (it.with_last && r.s0 > 0) keys.emplace_back(v.last_key(), r.s0);
      if (poly_deg<RF>(r.R) > 0) {
        for (auto& [psi, m] : base_->factor(*v.constant_field(), r.R))
          keys.emplace_back(v.lift_to_key(psi), m);
      }
      std::vector<Item> children;
      for (auto& [phi, m] : keys) {
        auto ex = expand(g, phi);
        std::vector<ExtRat> vals;
        for (long i = 0; i <= m; ++i)
          vals.push_back(i < static_cast<long>(ex.size()) ? v.value(ex[i]) : ExtRat::inf());
        long start = 0;
        if (vals[0].is_inf()) {
          InductiveValuation leaf = v.augment(phi, ExtRat::inf());
          out.push_back(Branch{leaf, phi, true, poly_deg<BF>(phi)});
          if (first_only) return out;
          start = 1;
        }
        // lower convex hull of (i, vals[i]) for start <= i <= m
        long i = start;
        while (i < m) {
          long best_j = -1;
          Rat best_slope;
          for (long j2 = i + 1; j2 <= m; ++j2) {
            if (vals[j2].is_inf()) continue;
            Rat sl = (vals[j2].value() - vals[i].value()) / Rat(j2 - i);
            if (best_j < 0 || sl <= best_slope) {
              best_j = j2;
              best_slope = sl;
            }
          }
          long len = best_j - i;
          Rat lam = -best_slope;
          InductiveValuation w = v.augment(phi, ExtRat(lam));
          if (first_only && len > 1) {
            children.push_back(Item{w, false});
            break;
          }
          if (len == 1) {
            int deg = poly_deg<BF>(phi);
            if (deg == poly_deg<BF>(g)) {
              out.push_back(Branch{v.augment(g, ExtRat::inf()), g, true, deg});
            } else {
              out.push_back(Branch{w, g, false, deg});
            }
            if (first_only) return out;
          } else {
            children.push_back(Item{w, false});
          }
          i = best_j;
        }
        if (first_only) break;
      }
      (void)Fd;
      if (first_only && !children.empty()) {
        work.push_back(children.front());
        continue;
      }
      for (auto it2 = children.rbegin(); it2 != children.rend(); ++it2) work.push_back(*it2);
    }
    return out;
  }

  // ------------------------------------------------------------ printing

  /// "[v0, v(x+2)=3/2, v(f)=4]"; a first step with lambda = 0 is the Gauss valuation.
  std::string str() const {
    std::ostringstream os;
    os << "[v0";
    for (size_t i = 0; i < lv_.size(); ++i) {
      if (i == 0 && lv_[0].lambda == ExtRat(0)) continue;
      os << ", v(" << base_->poly_str(display_key(static_cast<int>(i) + 1)) << ")=" << lv_[i].lambda.str();
    }
    os << "]";
    return os.str();
  }

  /// Key i with degree-one keys replaced by the simplest representative
  /// defining the same valuation (used for printing only).
  Poly display_key(int i) const {
    const Level& L = lv_.at(i - 1);
    if (poly_deg<BF>(L.phi) != 1 || !L.lambda.is_finite() || !(L.lambda > ExtRat(0))) return L.phi;
    return Poly{base_->round(L.phi[0], L.lambda.value()), F().one()};
  }

  static RElem rpow(const RF& K, const RElem& a, long e) {
    RElem base = e < 0 ? K.inv(a) : a;
    long k = e < 0 ? -e : e;
    RElem r = K.one();
    for (long i = 0; i < k; ++i) r = K.mul(r, base);
    return r;
  }

  /// Evaluates a Laurent polynomial over K_{j-1}, embedded by E, at z.
  static RElem eval_laurent(const RF& K, const Laurent& l, const Ext& E, const RElem& z) {
    RElem r = K.zero();
    for (size_t m = 0; m < l.c.size(); ++m) {
      if (E.base->is_zero(l.c[m])) continue;
      r = K.add(r, K.mul(E.embed(l.c[m]), rpow(K, z, l.low + static_cast<long>(m))));
    }
    return r;
  }

  /// Evaluates a Laurent polynomial over K at a nonzero element of K.
  static RElem eval_laurent_at(const RF& K, const Laurent& l, const RElem& z) {
    RElem r = K.zero();
    for (size_t m = 0; m < l.c.size(); ++m)
      r = K.add(r, K.mul(l.c[m], rpow(K, z, l.low + static_cast<long>(m))));
    return r;
  }

 private:
  struct Level {
    Poly phi;
    ExtRat lambda;
    long e = 1;
    long tau = 1;
    Mono Pi;  // monomial of value tau * lambda in levels < i
    RFPtr K;
    std::shared_ptr<const Ext> ext;
  };

  void push_level(Poly phi, const ExtRat& lam) {
    const BF& Fd = F();
    int j = length() + 1;
    if (j == 1) {
      if (poly_deg<BF>(phi) != 1) throw std::invalid_argument("first key must have degree 1");
      if (lam == ExtRat(0)) phi = poly_x(Fd);
    }
    if (!lv_.empty() && !lv_.back().lambda.is_finite())
      throw std::invalid_argument("chain continues after an infinite step");
    Level L;
    L.phi = std::move(phi);
    L.lambda = lam;
    long prev = e_at(j - 1);
    if (lam.is_finite()) {
      L.e = to_long(lcm(Int(prev), Int(den_long(lam.value()))));
      L.tau = L.e / prev;
    } else {
      L.e = prev;
      L.tau = 1;
    }
    if (j == 1) {
      L.K = base_->residue_field();
    } else {
      Residual r = residual_at(j - 1, L.phi);
      if (r.s0 != 0) throw std::invalid_argument("chain key equivalent to the previous key");
      auto ext = std::make_shared<Ext>(base_->extend(lv_.back().K, r.R));
      L.K = ext->field;
      L.ext = std::move(ext);
    }
    lv_.push_back(std::move(L));
    if (lam.is_finite()) lv_.back().Pi = mono(j - 1, Rat(lv_.back().tau) * lam.value());
  }

  std::shared_ptr<const B> base_;
  std::vector<Level> lv_;
};

/// The pseudovaluation v_xi attached to one branch of a polynomial g: either an
/// infinite chain [..., (g_B, inf)] with g_B a factor of g over the base field,
/// or a finite approximant refined on demand.
template <class B>
class LimitValuation {
 public:
  using V = InductiveValuation<B>;
  using Poly = typename V::Poly;
  using RElem = typename V::RElem;
  using RF = typename V::RF;

  LimitValuation(V approx, Poly g, bool exact)
      : g_(std::move(g)), exact_(exact), cache_(std::make_shared<Cache>()) {
    cache_->chain.push_back(std::move(approx));
  }
  explicit LimitValuation(const typename V::Branch& b) : LimitValuation(b.leaf, b.factor, b.exact) {}

  bool exact() const { return exact_; }
  const Poly& g() const { return g_; }
  /// The initial approximant (exact: the infinite chain).
  const V& approx() const { return cache_->chain.front(); }
  int degree() const { return approx().last_degree(); }
  /// The chain of proper predecessors shared by all approximants.
  V prefix() const { return approx().pred(); }

  ExtRat value(const Poly& f) const {
    if (exact_) return approx().value(f);
    if (f.empty() || vanishes(f)) return ExtRat::inf();
    V u = settle(f);
    return u.value(f);
  }

  /// Whether f vanishes at the branch, i.e. shares with g the factor this branch belongs to.
  bool vanishes(const Poly& f) const {
    if (f.empty()) return true;
    const auto& F = approx().F();
    Poly h = poly_gcd(F, f, g_);
    if (poly_deg<typename V::BF>(h) < 1) return false;
    if (exact_) return approx().value(h).is_inf();
    Poly q = poly_divmod(F, g_, h).first;
    if (poly_deg<typename V::BF>(q) < 1) return true;
    // Exactly one of h, g/h vanishes; the other one settles at some approximant.
    for (size_t k = 0;; ++k) {
      V u = approximant(k);
      if (u.is_infinite()) return u.value(h).is_inf();
      const RF& K = *u.constant_field();
      RElem c = root_of(u);
      if (!K.is_zero(poly_eval(K, u.residual(h).R, c))) return false;
      if (!K.is_zero(poly_eval(K, u.residual(q).R, c))) return true;
    }
  }

  /// Reduction of f * mono(a) (value zero, a over the prefix levels) into k(v_xi).
  RElem reduce(const Poly& f, Mono a) const {
    const V& ap = approx();
    int n = ap.length();
    a.resize(static_cast<size_t>(n), 0);
    if (exact_) {
      Poly r = poly_mod(ap.F(), f, ap.last_key());
      return ap.cst(n, r, a);
    }
    if (vanishes(f)) return ap.constant_field()->zero();
    V u = settle(f);
    if (u.is_infinite()) return u.cst(n, poly_mod(u.F(), f, u.last_key()), a);
    const RF& K = *u.constant_field();
    a.push_back(0);
    auto l = u.red(n, f, a);
    return V::eval_laurent_at(K, l, root_of(u));
  }

  /// An approximant u <= v_xi with u(f) = v_xi(f).
  V settle(const Poly& f) const {
    for (size_t k = 0;; ++k) {
      V u = approximant(k);
      if (u.is_infinite()) return u;
      auto r = u.residual(f);
      const RF& K = *u.constant_field();
      RElem c = root_of(u);
      if (!K.is_zero(poly_eval(K, r.R, c))) return u;
    }
  }

  /// The k-th refinement of the initial approximant.
  V approximant(size_t k) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    while (cache_->chain.size() <= k) {
      const V& u = cache_->chain.back();
      if (u.is_infinite()) return u;
      const RF& K = *u.constant_field();
      RElem c = root_of(u);
      typename V::RPoly psi{K.neg(c), K.one()};
      Poly phi = u.lift_to_key(psi);
      auto ex = u.expand(g_, phi);
      V next = u;
      if (ex[0].empty()) {
        next = u.augment(phi, ExtRat::inf());
      } else {
        Rat mu = u.value(ex[0]).value() - u.value(ex.at(1)).value();
        next = u.augment(phi, ExtRat(mu));
      }
      cache_->chain.push_back(next);
    }
    return cache_->chain[k];
  }

 private:
  RElem root_of(const V& u) const {
    auto r = u.residual(g_);
    if (poly_deg<RF>(r.R) != 1) throw std::logic_error("branch approximant does not isolate a factor");
    const RF& K = *u.constant_field();
    return K.neg(K.div(r.R[0], r.R[1]));
  }

  struct Cache {
    std::mutex mu;
    std::vector<V> chain;
  };
  Poly g_;
  bool exact_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace regdiff
