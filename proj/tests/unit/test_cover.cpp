#include <doctest.h>

#include <numeric>

#include "fixtures.hpp"

using namespace regdiff;
using namespace regdiff::test;

namespace {

/// Lattice points strictly inside the Newton polygon of y^n - x^m g, counted with
/// exact edge tests on the polygon (0, n), (m, 0), (d, 0).
long interior_count(long n, long m, long d) {
  long count = 0;
  for (long i = 0; i <= d; ++i)
    for (long j = 0; j <= n; ++j) {
      // Strictly above the lower edge from (0, n) to (m, 0) and strictly below the edge to (d, 0).
      bool above_lower = n * i + m * j > m * n;
      bool below_upper = n * i + d * j < d * n;
      if (j > 0 && above_lower && below_upper) ++count;
    }
  return count;
}

/// Genus of y^n = x^m g(x), deg g = dg, g squarefree and prime to x, by Riemann-Hurwitz.
long hurwitz_genus(long n, long m, long dg) {
  long d = m + dg;
  long ram = dg * (n - 1) + (m > 0 ? n - std::gcd(n, m) : 0) + n - std::gcd(n, d);
  return (ram - 2 * n + 2) / 2;
}

YFieldElem random_elem(std::mt19937_64& rng, long p, long n) {
  YFieldElem g(static_cast<size_t>(n));
  for (auto& a : g) {
    QPoly num = random_poly(rng, p, 3);
    QPoly den = uniform(rng, 0, 3) == 0 ? random_poly(rng, p, 1, 0, 1) : QPoly(1);
    if (den.is_zero()) den = QPoly(1);
    a = RatFunc(num, den);
  }
  return g;
}

/// A random combination of K-basis monomials with p-power-scaled rational coefficients.
YFieldElem random_combination(std::mt19937_64& rng, long p, const std::vector<KMonomial>& kb) {
  YFieldElem g;
  for (const auto& m : kb) {
    if (uniform(rng, 0, 2) == 0) continue;
    YFieldElem e = m.elem();
    if (g.size() < e.size()) g.resize(e.size());
    RatFunc a(random_scaled_unit(rng, p, -2, 2));
    for (size_t i = 0; i < e.size(); ++i) g[i] += e[i] * a;
  }
  return g;
}

std::vector<const DifferentialsResult*> all_results() {
  return {&quartic_result(), &cubic_result(), &good_result()};
}

}  // namespace

TEST_SUITE("cover") {
  TEST_CASE("curve validation") {
    SuperellipticCurve c{2, 2, pow(X(), 3) + 1};
    CHECK_THROWS_WITH_AS(c.validate(), "curve: n = 2 is not invertible mod p = 2", std::invalid_argument);
    CHECK_THROWS_AS((SuperellipticCurve{3, 2, pow(X(), 4)}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SuperellipticCurve{3, 2, X() * X() + 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SuperellipticCurve{3, 2, (X() - 1) * (X() - 1) * (X() + 1)}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SuperellipticCurve{6, 5, pow(X(), 3) + 1}.validate()), std::invalid_argument);
    CHECK_NOTHROW((SuperellipticCurve{3, 4, X() * (pow(X(), 3) + 1)}.validate()));
  }

  TEST_CASE("the K-basis has one element per interior Newton polygon point and genus many") {
    CHECK(kbasis(quartic_cover()).size() == 3);
    CHECK(kbasis(cubic_cover()).size() == 6);
    for (long n = 2; n <= 7; ++n)
      for (long m = 0; m < n; ++m)
        for (long dg = 3; dg <= 7; ++dg) {
          QPoly g = pow(X(), static_cast<unsigned>(dg)) + 1;
          SuperellipticCurve c{101, n, pow(X(), static_cast<unsigned>(m)) * g};
          long d = m + dg;
          long expected = interior_count(n, m, d);
          if (expected == 0) {
            CHECK_THROWS_AS(kbasis(c), std::invalid_argument);
            continue;
          }
          CHECK(static_cast<long>(kbasis(c).size()) == expected);
          CHECK(expected == hurwitz_genus(n, m, dg));
        }
  }

  TEST_CASE("every extension satisfies n w(y) = v(f) and the ramification shift") {
    for (const auto* r : all_results()) {
      const auto& c = r->curve;
      for (const auto& row : r->rows) {
        INFO(row.v.str());
        CHECK(Rat(c.n * row.wy) == value(row.v, c.f).value());
        CHECK(row.e == row.e_index);
        // w(dx) - v(dx) = e - 1, with w(dx) = w(eta) + (n - 1) w(y).
        Rat w_dx = row.weta + Rat(c.n - 1) * row.wy;
        CHECK(w_dx - row.vdx == Rat(row.e - 1));
        ExtValuation w = extend_valuation(row.v, c);
        CHECK(w.e() == row.e);
        // Values of w lie in (1/(e e_v)) Z.
        std::mt19937_64 rng(7);
        for (int t = 0; t < 20; ++t) {
          ExtRat val = w.value(random_combination(rng, c.p, r->kb));
          if (val.is_finite()) CHECK((Rat(val.value() * (row.e * row.v.e())).get_den() == 1));
        }
      }
    }
  }

  TEST_CASE("shortcut values agree with the chain where the expansion is orthogonal") {
    long orthogonal = 0;
    for (const auto* r : all_results()) {
      const auto& c = r->curve;
      for (const auto& row : r->rows) {
        ExtValuation w = extend_valuation(row.v, c);
        if (!w.orthogonal()) continue;
        ++orthogonal;
        std::mt19937_64 rng(8);
        for (int t = 0; t < 200; ++t) {
          YFieldElem g = random_elem(rng, c.p, c.n);
          CHECK(w.value(g) == w.shortcut_value(g));
        }
      }
    }
    CHECK(orthogonal > 0);
  }

  TEST_CASE("reduced bases pass 500 random combinations") {
    for (const auto* r : all_results())
      for (const auto& row : r->rows) {
        INFO(row.v.str());
        ExtValuation w = extend_valuation(row.v, r->curve);
        CHECK(is_reduced(w, row.reduced, 500, 9));
        for (const auto& b : row.reduced) CHECK(w.value(b.elem) == ExtRat(b.value));
      }
  }

  TEST_CASE("module generators are minimal multiples above the bound") {
    for (const auto* r : all_results())
      for (const auto& row : r->rows) {
        Rat bound = -row.weta;
        long p = r->curve.p;
        REQUIRE(row.module.size() == row.reduced.size());
        for (const auto& b : row.module) {
          CHECK(b.value >= bound);
          CHECK(b.value - 1 < bound);
        }
        // The row lattice contains exactly the module generators' span.
        for (const auto& b : row.module) CHECK(row.lattice.contains(b.coords));
        for (const auto& b : row.module) {
          RatVec smaller = b.coords;
          for (auto& a : smaller) a /= p;
          CHECK_FALSE(row.lattice.contains(smaller));
        }
      }
  }

  TEST_CASE("the final lattice does not depend on the processing order") {
    for (const auto& c : {quartic_cover(), good_elliptic(), cubic_cover()}) {
      DifferentialsResult base = integral_basis(c);
      std::vector<size_t> ord(base.rows.size());
      std::iota(ord.begin(), ord.end(), 0);
      std::mt19937_64 rng(10);
      std::vector<std::vector<size_t>> orders{std::vector<size_t>(ord.rbegin(), ord.rend())};
      for (int k = 0; k < 3; ++k) {
        std::shuffle(ord.begin(), ord.end(), rng);
        orders.push_back(ord);
      }
      for (const auto& o : orders) {
        DiffLattice L = base.rows.at(o[0]).lattice;
        for (size_t k = 1; k < o.size(); ++k) L = intersect_lattices(L, base.rows.at(o[k]).lattice);
        CHECK(L == base.lattice);
      }
      CHECK(integral_basis(c, orders.back()).lattice == base.lattice);
    }
  }

  TEST_CASE("integral differentials lie in every local module") {
    for (const auto* r : all_results())
      for (const auto& col : r->lattice.basis())
        for (const auto& row : r->rows) CHECK(row.lattice.contains(col));
  }
}
