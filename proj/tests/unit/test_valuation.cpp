#include <doctest.h>

#include "fixtures.hpp"
#include "regdiff/berktree.hpp"

using namespace regdiff;
using namespace regdiff::test;

namespace {

/// min_i val_p(a_i) + i lambda over the Taylor expansion f(x) = sum a_i (x - a)^i.
ExtRat disc_value(const QPoly& f, const Rat& a, const Rat& lambda, long p) {
  QPoly g = f.compose(X() + QPoly(a));
  ExtRat best = ExtRat::inf();
  for (int i = 0; i <= g.degree(); ++i)
    if (g.coeff(i) != 0) best = min(best, valp(g.coeff(i), p) + ExtRat(lambda * i));
  return best;
}

std::vector<PseudoValPoint> point_sample() {
  std::vector<PseudoValPoint> out;
  for (const auto& m : {quartic_result().model, cubic_result().model}) out.insert(out.end(), m.points.begin(), m.points.end());
  for (size_t i = 0; i < 6; ++i) {
    const auto& pts = model_corpus()[i].points;
    out.insert(out.end(), pts.begin(), pts.end());
  }
  return out;
}

}  // namespace

TEST_SUITE("valuation") {
  TEST_CASE("gauss valuation is the minimum coefficient valuation") {
    std::mt19937_64 rng(1);
    for (long p : {2, 3, 5}) {
      QVal v0 = gauss_q(p);
      for (int t = 0; t < 200; ++t) {
        QPoly f = random_poly(rng, p, 6);
        CHECK(value(v0, f) == gauss_valuation(f, p));
      }
    }
  }

  TEST_CASE("disc valuations agree with the Taylor expansion oracle") {
    std::mt19937_64 rng(2);
    for (long p : {2, 3, 5}) {
      auto base = make_qbase(p);
      for (int c = 0; c < 10; ++c) {
        Rat a(uniform(rng, -30, 30));
        Rat lambda = Rat(uniform(rng, 1, 12)) / uniform(rng, 1, 4);
        QVal v = make_chain(base, {{X() - QPoly(a), ExtRat(lambda)}});
        for (int t = 0; t < 50; ++t) {
          QPoly f = random_poly(rng, p, 5);
          CHECK(value(v, f) == disc_value(f, a, lambda, p));
        }
      }
    }
  }

  TEST_CASE("valuation axioms on 20 chains and 1000 random pairs each") {
    std::mt19937_64 rng(3);
    const auto& chains = chain_sample();
    REQUIRE(chains.size() == 20);
    for (const auto& v : chains) {
      long p = v.base().p();
      QPoly phi(v.last_key());
      for (int t = 0; t < 1000; ++t) {
        QPoly f = random_poly(rng, p, 4), g = random_poly(rng, p, 4);
        if (t % 2) f = f * pow(phi, static_cast<unsigned>(uniform(rng, 1, 2))) + g.scaled(Rat(p));
        ExtRat vf = value(v, f), vg = value(v, g);
        REQUIRE(value(v, f * g) == vf + vg);
        ExtRat vs = value(v, f + g);
        REQUIRE(vs >= min(vf, vg));
        if (vf != vg) REQUIRE(vs == min(vf, vg));
      }
      for (int t = 0; t < 20; ++t) {
        Rat c = random_scaled_unit(rng, p, -3, 3);
        CHECK(value(v, QPoly(c)) == valp(c, p));
      }
    }
  }

  TEST_CASE("chains are minimal and predecessors increase") {
    std::mt19937_64 rng(4);
    for (const auto& v : chain_sample()) {
      for (int i = 2; i <= v.length(); ++i) {
        int d0 = static_cast<int>(v.phi(i - 1).size()) - 1, d1 = static_cast<int>(v.phi(i).size()) - 1;
        CHECK(d1 > d0);
        CHECK(d1 % d0 == 0);
        // lambda_i exceeds the value of phi_i under the previous level.
        CHECK(v.lambda(i) > v.truncation(i - 1).value(v.phi(i)));
      }
      auto preds = v.predecessors();
      for (size_t k = 0; k < preds.size(); ++k) {
        CHECK(preds[k].leq(v));
        CHECK_FALSE(v.leq(preds[k]));
        if (k + 1 < preds.size()) CHECK((preds[k].leq(preds[k + 1]) && !preds[k + 1].leq(preds[k])));
      }
      // v <= w implies v(f) <= w(f).
      for (const auto& u : preds)
        for (int t = 0; t < 50; ++t) {
          QPoly f = random_poly(rng, v.base().p(), 5);
          CHECK(value(u, f) <= value(v, f));
        }
    }
  }

  TEST_CASE("inf is idempotent, commutative, associative and a greatest lower bound") {
    auto pts = point_sample();
    std::mt19937_64 rng(5);
    auto same_prime = [](const PseudoValPoint& a, const PseudoValPoint& b) { return a.base()->p() == b.base()->p(); };
    for (int t = 0; t < 400; ++t) {
      const auto& a = pts[uniform(rng, 0, pts.size() - 1)];
      const auto& b = pts[uniform(rng, 0, pts.size() - 1)];
      const auto& c = pts[uniform(rng, 0, pts.size() - 1)];
      if (!same_prime(a, b) || !same_prime(a, c)) continue;
      CHECK(inf(a, a) == a);
      auto ab = inf(a, b);
      CHECK(ab == inf(b, a));
      CHECK(ab.leq(a));
      CHECK(ab.leq(b));
      CHECK(inf(ab, c) == inf(a, inf(b, c)));
      // Points below a are totally ordered.
      auto ac = inf(a, c);
      CHECK((ab.leq(ac) || ac.leq(ab)));
      // Any common lower bound lies below the infimum.
      if (c.leq(a) && c.leq(b)) CHECK(c.leq(ab));
    }
  }
}
