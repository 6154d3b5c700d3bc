#include <doctest.h>

#include "fixtures.hpp"
#include "regdiff/sheaf.hpp"

using namespace regdiff;
using namespace regdiff::test;

namespace {

/// The image of v under x -> p x, i.e. f -> v(f(p x)); keys phi become p^deg(phi) phi(x / p).
QVal scaled_chain(const QVal& v) {
  long p = v.base().p();
  std::vector<std::pair<QPoly, ExtRat>> steps;
  for (const auto& s : v.steps()) {
    QPoly phi(s.phi);
    int d = phi.degree();
    QPoly psi = phi.compose(X().scaled(Rat(1, p))).scaled(rat_pow(Rat(p), d));
    steps.emplace_back(psi, s.lambda + ExtRat(d));
  }
  return make_chain(v.base_ptr(), steps);
}

/// The image of v under x -> x + a.
QVal shifted_chain(const QVal& v, const Rat& a) {
  std::vector<std::pair<QPoly, ExtRat>> steps;
  for (const auto& s : v.steps()) steps.emplace_back(QPoly(s.phi).compose(X() - QPoly(a)), s.lambda);
  return make_chain(v.base_ptr(), steps);
}

QVal find_node(const ModelVals& m, const std::string& name) {
  for (size_t i : m.finite())
    if (m.points[i].str() == name) return m.points[i].val();
  FAIL("no node " << name);
  return m.points[0].val();
}

}  // namespace

TEST_SUITE("sheaf") {
  TEST_CASE("bivariate polynomial arithmetic") {
    BiPoly F = BiPoly::T1() * BiPoly::T1() - BiPoly::T2().scaled(4) + BiPoly::constant(2);
    CHECK(F.total_degree() == 2);
    CHECK(F(Rat(2), Rat(3, 2)) == 0);
    CHECK(F.d_T1() == BiPoly::T1().scaled(2));
    CHECK(F.d_T2() == BiPoly::constant(-4));
    auto q = (F * BiPoly::T2()).divide(BiPoly::T2());
    REQUIRE(q.has_value());
    CHECK(*q == F);
    CHECK_FALSE(F.divide(BiPoly::T2()).has_value());
    CHECK(F.scaled(Rat(-3, 7)).normalized() == F.normalized());
  }

  TEST_CASE("defining systems satisfy their relation") {
    for (const auto& v : chain_sample()) {
      DefiningSystem ds = defining_system(v);
      INFO(v.str(), ": F = ", ds.F.str());
      CHECK(ds.F.eval(ds.t1, ds.t2).is_zero());
      CHECK(value(v, ds.t1) == ExtRat(Rat(1, v.e())));
      CHECK(value(v, ds.t2) == ExtRat(0));
      CHECK(elimination_resultant(ds.t1, ds.t2).divide(ds.F).has_value());
    }
  }

  TEST_CASE("the two partial-derivative formulas agree") {
    for (const auto& v : chain_sample()) {
      auto [a, b] = order_dx_both(defining_system(v));
      INFO(v.str());
      if (a && b) CHECK(*a == *b);
      CHECK((a || b));
    }
  }

  TEST_CASE("order of dx on integral discs is the radius") {
    for (long p : {2, 3, 5, 7})
      for (long a : {0L, 1L, -4L})
        for (long k : {0L, 1L, 2L, 5L}) {
          QVal v = make_chain(make_qbase(p), {{X() - QPoly(a), ExtRat(k)}});
          CHECK(order_dx(v) == Rat(k));
        }
  }

  TEST_CASE("order of dx shifts by one under x -> p x and is invariant under translation") {
    for (const auto& v : chain_sample()) {
      INFO(v.str());
      QVal w = scaled_chain(v);
      CHECK(order_dx(w) == order_dx(v) + 1);
      QVal u = shifted_chain(v, Rat(v.base().p() + 1));
      CHECK(order_dx(u) == order_dx(v));
    }
  }

  TEST_CASE("published values of v(dx)") {
    CHECK(order_dx(find_node(quartic_result().model, "[v0, v(x)=2]")) == 2);
    QVal v2 = find_node(cubic_result().model, "[v0, v(x + 2)=3/2, v(x^2 + 4*x + 12)=4]");
    CHECK(order_dx(v2) == 3);
    // F = T1^2 - 4 T2 + 2 up to a unit for t1 = (x + 2)/2, t2 = f2 / 2^4.
    QPoly f2 = (X() + 2) * (X() + 2) + 8;
    DefiningSystem ds = defining_system(v2, RatFunc(X() + 2) * RatFunc(Rat(1, 2)), RatFunc(f2.scaled(Rat(1, 16))));
    BiPoly F = BiPoly::T1() * BiPoly::T1() - BiPoly::T2().scaled(4) + BiPoly::constant(2);
    CHECK(ds.F.normalized() == F.normalized());
    CHECK(order_dx(ds) == 3);
  }
}
