#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "regdiff/cover.hpp"
#include "regdiff/plmodel.hpp"
#include "regdiff/qvaluation.hpp"

namespace regdiff::test {

inline QPoly X() { return QPoly::x(); }

/// y^4 = (x^2 + 3^4)((x - 1)^2 - 3^3) at p = 3.
inline SuperellipticCurve quartic_cover() {
  return {3, 4, (X() * X() + 81) * ((X() - 1) * (X() - 1) - 27)};
}

/// y^3 = (x^3 - 2^4)((x + 2)^2 + 2^3)((x + 2)^2 - 2^3) at p = 2.
inline SuperellipticCurve cubic_cover() {
  QPoly u = X() + 2;
  return {2, 3, (pow(X(), 3) - 16) * (u * u + 8) * (u * u - 8)};
}

/// y^2 = x^3 + 1 at p = 5, a curve with good reduction.
inline SuperellipticCurve good_elliptic() { return {5, 2, pow(X(), 3) + 1}; }

/// Pipeline results are computed once per process.
inline const DifferentialsResult& quartic_result() {
  static const DifferentialsResult r = integral_basis(quartic_cover());
  return r;
}
inline const DifferentialsResult& cubic_result() {
  static const DifferentialsResult r = integral_basis(cubic_cover());
  return r;
}
inline const DifferentialsResult& good_result() {
  static const DifferentialsResult r = integral_basis(good_elliptic());
  return r;
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// c * p^k with c a random integer prime to p.
inline Rat random_scaled_unit(std::mt19937_64& rng, long p, long kmin, long kmax) {
  long c = 0;
  while (c % p == 0) c = uniform(rng, -3 * p, 3 * p);
  return Rat(c) * rat_pow(Rat(p), uniform(rng, kmin, kmax));
}

/// Random element of Z_(p)[x]-ish polynomials with coefficients c p^k.
inline QPoly random_poly(std::mt19937_64& rng, long p, int max_deg, long kmin = -1, long kmax = 3) {
  int d = static_cast<int>(uniform(rng, 0, max_deg));
  std::vector<Rat> c(d + 1);
  for (auto& a : c) a = uniform(rng, 0, 4) == 0 ? Rat(0) : random_scaled_unit(rng, p, kmin, kmax);
  if (c.back() == 0) c.back() = 1;
  return QPoly(c);
}

/// (x - a)^d - c p^k, squarefree with roots clustered around a.
inline QPoly random_cluster_factor(std::mt19937_64& rng, long p, int d) {
  Rat a(uniform(rng, -p * p, p * p));
  return pow(X() - QPoly(a), static_cast<unsigned>(d)) - QPoly(random_scaled_unit(rng, p, 0, 4));
}

/// A random divisor with pairwise coprime clustered factors of total degree at most max_deg.
inline DivisorSpec random_divisor(std::mt19937_64& rng, long p, int max_deg) {
  for (;;) {
    DivisorSpec D;
    D.p = p;
    D.include_infinity = uniform(rng, 0, 3) != 0;
    int left = max_deg;
    int nf = static_cast<int>(uniform(rng, 1, 3));
    for (int i = 0; i < nf && left > 0; ++i) {
      int d = static_cast<int>(uniform(rng, 1, std::min(3, left)));
      D.factors.push_back(random_cluster_factor(rng, p, d));
      left -= d;
    }
    bool ok = true;
    for (size_t i = 0; i < D.factors.size(); ++i)
      for (size_t j = i + 1; j < D.factors.size(); ++j)
        if (gcd(D.factors[i], D.factors[j]).degree() > 0) ok = false;
    if (ok) return D;
  }
}

/// The 25 random divisors of the property corpus (fixed seed).
inline const std::vector<DivisorSpec>& divisor_corpus() {
  static const std::vector<DivisorSpec> corpus = [] {
    std::mt19937_64 rng(20240611);
    std::vector<DivisorSpec> out;
    const long primes[] = {2, 3, 5};
    for (int i = 0; i < 25; ++i) out.push_back(random_divisor(rng, primes[i % 3], 6));
    return out;
  }();
  return corpus;
}

inline const std::vector<ModelVals>& model_corpus() {
  static const std::vector<ModelVals> models = [] {
    std::vector<ModelVals> out;
    for (const auto& D : divisor_corpus()) out.push_back(alg31(D));
    return out;
  }();
  return models;
}

/// Twenty finite valuations drawn from the examples and the random corpus.
inline const std::vector<QVal>& chain_sample() {
  static const std::vector<QVal> sample = [] {
    std::vector<QVal> out;
    auto take = [&](const ModelVals& m) {
      for (size_t i : m.finite()) {
        if (out.size() == 20) return;
        const QVal& v = m.points[i].val();
        if (std::none_of(out.begin(), out.end(), [&](const QVal& w) { return w.str() == v.str(); }))
          out.push_back(v);
      }
    };
    take(quartic_result().model);
    take(cubic_result().model);
    for (const auto& m : model_corpus()) take(m);
    return out;
  }();
  return sample;
}

}  // namespace regdiff::test
