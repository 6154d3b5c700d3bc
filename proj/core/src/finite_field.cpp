#include "regdiff/finite_field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace regdiff {

namespace {

long modp(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

long inv_modp(long a, long p) {
  long t = 0, nt = 1, r = p, nr = modp(a, p);
  if (nr == 0) throw std::domain_error("inverse of zero in F_p");
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return modp(t, p);
}

// The prime field as a polyops field, used for arithmetic on representatives.
struct Fp {
  using Elem = long;
  long p;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return modp(a + b, p); }
  Elem sub(Elem a, Elem b) const { return modp(a - b, p); }
  Elem neg(Elem a) const { return modp(-a, p); }
  Elem mul(Elem a, Elem b) const { return modp(a * b, p); }
  Elem inv(Elem a) const { return inv_modp(a, p); }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
};

uint64_t fnv_mix(uint64_t h, uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffU;
    h *= 1099511628211ULL;
  }
  return h;
}

uint64_t seed_of(const FiniteField& K, const FFPoly& f) {
  uint64_t h = 1469598103934665603ULL;
  h = fnv_mix(h, static_cast<uint64_t>(K.p()));
  for (long c : K.modulus()) h = fnv_mix(h, static_cast<uint64_t>(c));
  for (const auto& a : f)
    for (long c : a) h = fnv_mix(h, static_cast<uint64_t>(c));
  return h;
}

// Inverse of a square matrix over F_p (rows of columns layout irrelevant: plain matrix).
std::vector<std::vector<long>> mat_inverse_modp(std::vector<std::vector<long>> a, long p) {
  size_t n = a.size();
  std::vector<std::vector<long>> inv(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("singular matrix over F_p");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    long s = inv_modp(a[col][col], p);
    for (size_t j = 0; j < n; ++j) {
      a[col][j] = modp(a[col][j] * s, p);
      inv[col][j] = modp(inv[col][j] * s, p);
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      long c = a[r][col];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] = modp(a[r][j] - c * a[col][j], p);
        inv[r][j] = modp(inv[r][j] - c * inv[col][j], p);
      }
    }
  }
  return inv;
}

FFPoly poly_pth_root(const FiniteField& K, const FFPoly& c) {
  // c(x) = sum a_i x^{ip}; returns sum a_i^{1/p} x^i
  Int e = K.order() / K.p();
  FFPoly r;
  for (size_t i = 0; i < c.size(); i += static_cast<size_t>(K.p())) r.push_back(K.pow(c[i], e));
  poly_trim(K, r);
  return r;
}

std::vector<std::pair<FFPoly, int>> squarefree_decomposition(const FiniteField& K, const FFPoly& f) {
  std::vector<std::pair<FFPoly, int>> out;
  FFPoly one{K.one()};
  FFPoly c = poly_gcd(K, f, poly_derivative(K, f));
  FFPoly w = poly_divmod(K, f, c).first;
  int i = 1;
  while (poly_deg<FiniteField>(w) > 0) {
    FFPoly y = poly_gcd(K, w, c);
    FFPoly fac = poly_divmod(K, w, y).first;
    if (poly_deg<FiniteField>(fac) > 0) out.emplace_back(poly_monic(K, fac), i);
    w = y;
    c = poly_divmod(K, c, y).first;
    ++i;
  }
  if (poly_deg<FiniteField>(c) > 0) {
    FFPoly r = poly_pth_root(K, c);
    for (auto& [g, j] : squarefree_decomposition(K, r)) out.emplace_back(g, j * static_cast<int>(K.p()));
  }
  return out;
}

std::vector<std::pair<FFPoly, int>> distinct_degree(const FiniteField& K, FFPoly f) {
  std::vector<std::pair<FFPoly, int>> out;
  FFPoly x = poly_x(K);
  FFPoly h = x;
  Int q = K.order();
  int i = 0;
  while (2 * (i + 1) <= poly_deg<FiniteField>(f)) {
    ++i;
    h = poly_powmod(K, h, q, f);
    FFPoly g = poly_gcd(K, poly_sub(K, h, x), f);
    if (poly_deg<FiniteField>(g) > 0) {
      out.emplace_back(g, i);
      f = poly_divmod(K, f, g).first;
      h = poly_mod(K, h, f);
    }
  }
  if (poly_deg<FiniteField>(f) > 0) out.emplace_back(poly_monic(K, f), poly_deg<FiniteField>(f));
  return out;
}

void equal_degree(const FiniteField& K, const FFPoly& f, int k, std::mt19937_64& rng,
                  std::vector<FFPoly>& out) {
  int n = poly_deg<FiniteField>(f);
  if (n == k) {
    out.push_back(poly_monic(K, f));
    return;
  }
  Int q = K.order();
  Int qk;
  mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k));
  for (;;) {
    FFPoly a;
    for (int i = 0; i < n; ++i) a.push_back(K.random(rng));
    poly_trim(K, a);
    if (poly_deg<FiniteField>(a) < 1) continue;
    FFPoly b;
    if (K.p() == 2) {
      // absolute trace map to F_2 of F_{q^k}
      long m = static_cast<long>(K.degree()) * k;
      FFPoly t = a, s = a;
      for (long i = 1; i < m; ++i) {
        t = poly_mulmod(K, t, t, f);
        s = poly_add(K, s, t);
      }
      b = s;
    } else {
      b = poly_powmod(K, a, (qk - 1) / 2, f);
      b = poly_sub(K, b, FFPoly{K.one()});
    }
    FFPoly g = poly_gcd(K, b, f);
    int dg = poly_deg<FiniteField>(g);
    if (dg > 0 && dg < n) {
      equal_degree(K, g, k, rng, out);
      equal_degree(K, poly_divmod(K, f, g).first, k, rng, out);
      return;
    }
  }
}

}  // namespace

FiniteField::FiniteField(long p, std::vector<long> m) : p_(p), d_(static_cast<int>(m.size()) - 1), m_(std::move(m)) {}

FFPtr FiniteField::prime(long p) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic is not prime");
  return FFPtr(new FiniteField(p, {0, 1}));
}

FFPtr FiniteField::create(long p, std::vector<long> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic is not prime");
  for (auto& c : modulus) c = modp(c, p);
  while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
  if (modulus.size() < 2 || modulus.back() != 1) throw std::invalid_argument("modulus must be monic of positive degree");
  auto Fpp = prime(p);
  FFPoly m;
  for (long c : modulus) m.push_back(Fpp->from_int(c));
  if (!ff_is_irreducible(*Fpp, m)) throw std::invalid_argument("modulus is not irreducible");
  return FFPtr(new FiniteField(p, std::move(modulus)));
}

Int FiniteField::order() const {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(d_));
  return r;
}

FiniteField::Elem FiniteField::one() const {
  Elem r(d_, 0);
  r[0] = 1;
  return r;
}

FiniteField::Elem FiniteField::from_int(long n) const {
  Elem r(d_, 0);
  r[0] = modp(n, p_);
  return r;
}

FiniteField::Elem FiniteField::gen() const {
  Elem r(d_, 0);
  if (d_ >= 2) {
    r[1] = 1;
  } else {
    r[0] = modp(-m_[0], p_);
  }
  return r;
}

FiniteField::Elem FiniteField::add(const Elem& a, const Elem& b) const {
  Elem r(d_);
  for (int i = 0; i < d_; ++i) r[i] = modp(a[i] + b[i], p_);
  return r;
}

FiniteField::Elem FiniteField::sub(const Elem& a, const Elem& b) const {
  Elem r(d_);
  for (int i = 0; i < d_; ++i) r[i] = modp(a[i] - b[i], p_);
  return r;
}

FiniteField::Elem FiniteField::neg(const Elem& a) const {
  Elem r(d_);
  for (int i = 0; i < d_; ++i) r[i] = modp(-a[i], p_);
  return r;
}

FiniteField::Elem FiniteField::mul(const Elem& a, const Elem& b) const {
  if (d_ == 1) return Elem{modp(a[0] * b[0], p_)};
  std::vector<long> t(2 * d_ - 1, 0);
  for (int i = 0; i < d_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d_; ++j) t[i + j] = modp(t[i + j] + a[i] * b[j], p_);
  }
  for (int k = 2 * d_ - 2; k >= d_; --k) {
    long c = t[k];
    if (c == 0) continue;
    for (int j = 0; j <= d_; ++j) t[k - d_ + j] = modp(t[k - d_ + j] - c * m_[j], p_);
  }
  t.resize(d_);
  return t;
}

FiniteField::Elem FiniteField::inv(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero in finite field");
  if (d_ == 1) return Elem{inv_modp(a[0], p_)};
  Fp F{p_};
  std::vector<long> A(a);
  poly_trim(F, A);
  auto [g, s, t] = poly_xgcd(F, A, m_);
  (void)t;
  if (g.size() != 1) throw std::domain_error("finite field modulus is not irreducible");
  Elem r(d_, 0);
  for (size_t i = 0; i < s.size(); ++i) r[i] = s[i];
  return r;
}

FiniteField::Elem FiniteField::pow(const Elem& a, const Int& e) const {
  Elem r = one();
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i) != 0) r = mul(r, a);
  }
  return r;
}

bool FiniteField::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](long c) { return c == 0; });
}

FiniteField::Elem FiniteField::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<long> dist(0, p_ - 1);
  Elem r(d_);
  for (auto& c : r) c = dist(rng);
  return r;
}

FiniteField::Elem FiniteField::from_index(uint64_t n) const {
  Elem r(d_);
  for (auto& c : r) {
    c = static_cast<long>(n % static_cast<uint64_t>(p_));
    n /= static_cast<uint64_t>(p_);
  }
  return r;
}

std::string FiniteField::str(const Elem& a) const {
  if (d_ == 1) return std::to_string(a[0]);
  std::ostringstream os;
  bool first = true;
  for (int i = d_ - 1; i >= 0; --i) {
    if (a[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || a[i] != 1) os << a[i];
    if (i >= 1) os << "a";
    if (i >= 2) os << "^" << i;
  }
  return first ? "0" : os.str();
}

FFPoly ff_poly_from_ints(const FiniteField& K, const std::vector<long>& c) {
  FFPoly r;
  for (long v : c) r.push_back(K.from_int(v));
  poly_trim(K, r);
  return r;
}

std::string ff_poly_str(const FiniteField& K, const FFPoly& f, const std::string& var) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = poly_deg<FiniteField>(f); i >= 0; --i) {
    if (K.is_zero(f[i])) continue;
    if (!first) os << " + ";
    first = false;
    std::string c = K.str(f[i]);
    bool unit = K.is_one(f[i]);
    if (i == 0 || !unit) os << (K.degree() > 1 && i > 0 ? "(" + c + ")" : c);
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

bool ff_poly_less(const FFPoly& a, const FFPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) {
      for (size_t j = a[i].size(); j-- > 0;)
        if (a[i][j] != b[i][j]) return a[i][j] < b[i][j];
    }
  }
  return false;
}

bool ff_is_irreducible(const FiniteField& K, const FFPoly& f0) {
  int n = poly_deg<FiniteField>(f0);
  if (n < 1) return false;
  if (n == 1) return true;
  FFPoly f = poly_monic(K, f0);
  FFPoly x = poly_x(K);
  FFPoly h = x;
  Int q = K.order();
  for (int i = 1; 2 * i <= n; ++i) {
    h = poly_powmod(K, h, q, f);
    FFPoly g = poly_gcd(K, poly_sub(K, h, x), f);
    if (poly_deg<FiniteField>(g) > 0) return false;
  }
  // reject powers of irreducibles of degree > n/2: impossible, but check squarefreeness
  return poly_deg<FiniteField>(poly_gcd(K, f, poly_derivative(K, f))) == 0;
}

std::vector<std::pair<FFPoly, int>> ff_factor(const FiniteField& K, const FFPoly& f0) {
  if (f0.empty()) throw std::domain_error("ff_factor of the zero polynomial");
  std::vector<std::pair<FFPoly, int>> out;
  if (poly_deg<FiniteField>(f0) == 0) return out;
  FFPoly f = poly_monic(K, f0);
  std::mt19937_64 rng(seed_of(K, f));
  for (auto& [g, mult] : squarefree_decomposition(K, f)) {
    for (auto& [h, k] : distinct_degree(K, g)) {
      std::vector<FFPoly> parts;
      equal_degree(K, h, k, rng, parts);
      for (auto& u : parts) out.emplace_back(u, mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (ff_poly_less(a.first, b.first)) return true;
    if (ff_poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

std::vector<FiniteField::Elem> ff_roots(const FiniteField& K, const FFPoly& f) {
  std::vector<FiniteField::Elem> r;
  for (auto& [g, m] : ff_factor(K, f)) {
    (void)m;
    if (poly_deg<FiniteField>(g) == 1) r.push_back(K.neg(g[0]));
  }
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<long> find_irreducible(long p, int d) {
  auto F = FiniteField::prime(p);
  if (d == 1) return {0, 1};
  uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<uint64_t>(p);
  for (uint64_t n = 0; n < total; ++n) {
    std::vector<long> c(d + 1, 0);
    uint64_t m = n;
    for (int i = 0; i < d; ++i) {
      c[i] = static_cast<long>(m % static_cast<uint64_t>(p));
      m /= static_cast<uint64_t>(p);
    }
    c[d] = 1;
    if (c[0] == 0) continue;
    if (ff_is_irreducible(*F, ff_poly_from_ints(*F, c))) return c;
  }
  throw std::logic_error("no irreducible polynomial found");
}

FiniteField::Elem FFExtension::embed(const FiniteField::Elem& a) const {
  const FiniteField& L = *field;
  FiniteField::Elem r = L.zero(), pw = L.one();
  for (long c : a) {
    r = L.add(r, L.mul(L.from_int(c), pw));
    pw = L.mul(pw, alpha);
  }
  return r;
}

std::vector<FiniteField::Elem> FFExtension::decompose(const FiniteField::Elem& x) const {
  int d = base->degree();
  int k = poly_deg<FiniteField>(psi);
  size_t D = x.size();
  std::vector<long> c(D, 0);
  long p = base->p();
  for (size_t i = 0; i < D; ++i) {
    long s = 0;
    for (size_t j = 0; j < D; ++j) s = modp(s + inv_basis[i][j] * x[j], p);
    c[i] = s;
  }
  std::vector<FiniteField::Elem> out(k, base->zero());
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < d; ++i) out[j][i] = c[static_cast<size_t>(j * d + i)];
  return out;
}

FFExtension ff_extend(const FFPtr& K, const FFPoly& psi0) {
  FFExtension ext;
  ext.base = K;
  ext.psi = poly_monic(*K, psi0);
  int k = poly_deg<FiniteField>(ext.psi);
  if (k < 1) throw std::invalid_argument("ff_extend: psi must have positive degree");
  int d = K->degree();
  long p = K->p();
  if (k == 1) {
    ext.field = K;
    ext.root = K->neg(ext.psi[0]);
    ext.alpha = K->gen();
  } else {
    if (!ff_is_irreducible(*K, ext.psi)) throw std::invalid_argument("ff_extend: psi is reducible");
    auto L = FiniteField::create(p, find_irreducible(p, d * k));
    ext.field = L;
    FFPoly mK;
    for (long c : K->modulus()) mK.push_back(L->from_int(c));
    auto roots = ff_roots(*L, mK);
    if (roots.empty()) throw std::logic_error("ff_extend: base modulus has no root");
    ext.alpha = roots.front();
    FFPoly psiL;
    for (const auto& c : ext.psi) psiL.push_back(ext.embed(c));
    auto zs = ff_roots(*L, psiL);
    if (zs.empty()) throw std::logic_error("ff_extend: psi has no root in the extension");
    ext.root = zs.front();
  }
  const FiniteField& L = *ext.field;
  size_t D = static_cast<size_t>(L.degree());
  std::vector<std::vector<long>> M(D, std::vector<long>(D, 0));
  FiniteField::Elem zj = L.one();
  for (int j = 0; j < k; ++j) {
    FiniteField::Elem ai = L.one();
    for (int i = 0; i < d; ++i) {
      FiniteField::Elem v = L.mul(ai, zj);
      for (size_t r = 0; r < D; ++r) M[r][static_cast<size_t>(j * d + i)] = v[r];
      ai = L.mul(ai, ext.alpha);
    }
    zj = L.mul(zj, ext.root);
  }
  ext.inv_basis = mat_inverse_modp(M, p);
  return ext;
}

}  // namespace regdiff
