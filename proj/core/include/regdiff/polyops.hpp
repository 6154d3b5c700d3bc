#pragma once

// Dense polynomial arithmetic over an abstract field type F.
// F must provide Elem, zero(), one(), add, sub, neg, mul, inv, is_zero, eq.

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "regdiff/rational.hpp"

namespace regdiff {

template <class F>
using PolyOf = std::vector<typename F::Elem>;

template <class F>
void poly_trim(const F& K, PolyOf<F>& a) {
  while (!a.empty() && K.is_zero(a.back())) a.pop_back();
}

template <class F>
int poly_deg(const PolyOf<F>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class F>
PolyOf<F> poly_const(const F& K, const typename F::Elem& c) {
  PolyOf<F> r{c};
  poly_trim(K, r);
  return r;
}

template <class F>
PolyOf<F> poly_x(const F& K) {
  return PolyOf<F>{K.zero(), K.one()};
}

template <class F>
bool poly_eq(const F& K, const PolyOf<F>& a, const PolyOf<F>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!K.eq(a[i], b[i])) return false;
  return true;
}

template <class F>
PolyOf<F> poly_add(const F& K, const PolyOf<F>& a, const PolyOf<F>& b) {
  PolyOf<F> r(std::max(a.size(), b.size()), K.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = K.add(r[i], b[i]);
  poly_trim(K, r);
  return r;
}

template <class F>
PolyOf<F> poly_sub(const F& K, const PolyOf<F>& a, const PolyOf<F>& b) {
  PolyOf<F> r(std::max(a.size(), b.size()), K.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = K.sub(r[i], b[i]);
  poly_trim(K, r);
  return r;
}

template <class F>
PolyOf<F> poly_scale(const F& K, const PolyOf<F>& a, const typename F::Elem& c) {
  PolyOf<F> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(K.mul(x, c));
  poly_trim(K, r);
  return r;
}

template <class F>
PolyOf<F> poly_shift(const F& K, const PolyOf<F>& a, int k) {
  if (a.empty()) return a;
  PolyOf<F> r(k, K.zero());
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

template <class F>
PolyOf<F> poly_mul(const F& K, const PolyOf<F>& a, const PolyOf<F>& b) {
  if (a.empty() || b.empty()) return {};
  PolyOf<F> r(a.size() + b.size() - 1, K.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (K.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
  }
  poly_trim(K, r);
  return r;
}

template <class F>
std::pair<PolyOf<F>, PolyOf<F>> poly_divmod(const F& K, const PolyOf<F>& a, const PolyOf<F>& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  PolyOf<F> r = a;
  int db = poly_deg<F>(b);
  int dq = poly_deg<F>(a) - db;
  if (dq < 0) return {PolyOf<F>{}, r};
  PolyOf<F> q(dq + 1, K.zero());
  auto inv = K.inv(b.back());
  for (int i = dq; i >= 0; --i) {
    auto c = K.mul(r[i + db], inv);
    q[i] = c;
    if (K.is_zero(c)) continue;
    for (int j = 0; j <= db; ++j) r[i + j] = K.sub(r[i + j], K.mul(c, b[j]));
  }
  poly_trim(K, r);
  poly_trim(K, q);
  return {q, r};
}

template <class F>
PolyOf<F> poly_mod(const F& K, const PolyOf<F>& a, const PolyOf<F>& b) {
  return poly_divmod(K, a, b).second;
}

template <class F>
PolyOf<F> poly_monic(const F& K, const PolyOf<F>& a) {
  if (a.empty()) return a;
  return poly_scale(K, a, K.inv(a.back()));
}

template <class F>
PolyOf<F> poly_gcd(const F& K, PolyOf<F> a, PolyOf<F> b) {
  while (!b.empty()) {
    PolyOf<F> r = poly_mod(K, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(K, a);
}

/// Extended gcd: returns (g, s, t) with s a + t b = g monic.
template <class F>
std::tuple<PolyOf<F>, PolyOf<F>, PolyOf<F>> poly_xgcd(const F& K, PolyOf<F> a, PolyOf<F> b) {
  PolyOf<F> s0{K.one()}, s1{}, t0{}, t1{K.one()};
  while (!b.empty()) {
    auto [q, r] = poly_divmod(K, a, b);
    PolyOf<F> s2 = poly_sub(K, s0, poly_mul(K, q, s1));
    PolyOf<F> t2 = poly_sub(K, t0, poly_mul(K, q, t1));
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.empty()) return {a, s0, t0};
  auto inv = K.inv(a.back());
  return {poly_scale(K, a, inv), poly_scale(K, s0, inv), poly_scale(K, t0, inv)};
}

template <class F>
PolyOf<F> poly_derivative(const F& K, const PolyOf<F>& a) {
  PolyOf<F> r;
  for (size_t i = 1; i < a.size(); ++i) {
    typename F::Elem c = K.zero();
    for (size_t j = 0; j < i; ++j) c = K.add(c, a[i]);
    r.push_back(c);
  }
  poly_trim(K, r);
  return r;
}

template <class F>
typename F::Elem poly_eval(const F& K, const PolyOf<F>& a, const typename F::Elem& x) {
  typename F::Elem r = K.zero();
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = K.add(K.mul(r, x), *it);
  return r;
}

template <class F>
PolyOf<F> poly_mulmod(const F& K, const PolyOf<F>& a, const PolyOf<F>& b, const PolyOf<F>& m) {
  return poly_mod(K, poly_mul(K, a, b), m);
}

/// a^e mod m for a nonnegative integer exponent.
template <class F>
PolyOf<F> poly_powmod(const F& K, const PolyOf<F>& a, const Int& e, const PolyOf<F>& m) {
  PolyOf<F> r = poly_mod(K, PolyOf<F>{K.one()}, m);
  PolyOf<F> b = poly_mod(K, a, m);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = poly_mulmod(K, r, r, m);
    if (mpz_tstbit(e.get_mpz_t(), i) != 0) r = poly_mulmod(K, r, b, m);
  }
  return r;
}

template <class F>
PolyOf<F> poly_pow(const F& K, const PolyOf<F>& a, unsigned e) {
  PolyOf<F> r{K.one()};
  for (unsigned i = 0; i < e; ++i) r = poly_mul(K, r, a);
  return r;
}

/// a(b(x)).
template <class F>
PolyOf<F> poly_compose(const F& K, const PolyOf<F>& a, const PolyOf<F>& b) {
  PolyOf<F> r;
  for (auto it = a.rbegin(); it != a.rend(); ++it)
    r = poly_add(K, poly_mul(K, r, b), poly_const(K, *it));
  return r;
}

}  // namespace regdiff
