#include <doctest.h>

#include <deque>
#include <numeric>
#include <unordered_map>

#include "fixtures.hpp"
#include "regdiff/berktree.hpp"

using namespace regdiff;
using namespace regdiff::test;

namespace {

/// Small exact fraction for the breadth-first oracle.
struct Fr {
  long n, d;
  static Fr make(long n, long d) {
    long g = std::gcd(n, d);
    return {n / g, d / g};
  }
  bool operator<(const Fr& o) const { return n * o.d < o.n * d; }
  bool operator<=(const Fr& o) const { return n * o.d <= o.n * d; }
  bool operator==(const Fr& o) const { return n == o.n && d == o.d; }
  long key() const { return n * 100000 + d; }
};

/// Distances from a along strictly increasing N-steps whose denominators are at most B,
/// restricted to [a, hi].  Steps are enumerated from the definition.
std::unordered_map<long, int> bfs_distances(Fr a, Fr hi, long N, long B) {
  std::unordered_map<long, int> dist{{a.key(), 0}};
  std::deque<Fr> queue{a};
  while (!queue.empty()) {
    Fr t = queue.front();
    queue.pop_front();
    int dt = dist[t.key()];
    long l1 = std::lcm(N, t.d);
    for (long c2 = 1; c2 <= B; ++c2) {
      long den = l1 * std::lcm(N, c2);
      Fr s = Fr::make(t.n * den + N * t.d, t.d * den);
      if (s.d != c2 || !(s <= hi)) continue;
      if (dist.emplace(s.key(), dt + 1).second) queue.push_back(s);
    }
  }
  return dist;
}

std::vector<Fr> fractions_in(long lo_num, long lo_den, long width, long maxden) {
  std::vector<Fr> out;
  for (long d = 1; d <= maxden; ++d)
    for (long n = lo_num * d / lo_den - 1; n <= (lo_num + width * lo_den) * d / lo_den + 1; ++n) {
      Fr f = Fr::make(n, d);
      if (f.d == d) out.push_back(f);
    }
  return out;
}

Rat to_rat(const Fr& f) { return Rat(f.n) / f.d; }

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("is_N_step matches the definition on small cases") {
    CHECK(is_N_step(Rat(0), Rat(1), 1));
    CHECK(is_N_step(Rat(1, 3), Rat(1, 2), 1));
    CHECK_FALSE(is_N_step(Rat(0), Rat(2), 1));
    // N = 2: steps of size 2 / (lcm(2, c1) lcm(2, c2)).
    CHECK(is_N_step(Rat(3, 2), Rat(2), 2));
    CHECK(is_N_step(Rat(1), Rat(3, 2), 2));
    CHECK_FALSE(is_N_step(Rat(1), Rat(2), 2));
    CHECK_THROWS_AS(is_N_step(Rat(0), Rat(1), 0), std::invalid_argument);
  }

  TEST_CASE("shortest_N_path agrees with a breadth-first oracle") {
    // Translation by integers preserves N-steps, so lambda ranges over [0, 1).
    long checked = 0;
    for (long N = 1; N <= 6; ++N) {
      const long B = 24 * N;
      for (const Fr& a : fractions_in(0, 1, 1, 12)) {
        if (!(a < Fr{1, 1}) || a.n < 0) continue;
        Fr hi{a.n + 4 * a.d, a.d};
        auto dist = bfs_distances(a, hi, N, B);
        for (const Fr& b : fractions_in(a.n, a.d, 4, 12)) {
          if (!(a < b) || !(b <= hi)) continue;
          auto path = shortest_N_path(to_rat(a), to_rat(b), N);
          REQUIRE(path.front() == to_rat(a));
          REQUIRE(path.back() == to_rat(b));
          for (size_t k = 0; k + 1 < path.size(); ++k) {
            REQUIRE(path[k] < path[k + 1]);
            REQUIRE(is_N_step(path[k], path[k + 1], N));
          }
          auto it = dist.find(b.key());
          REQUIRE(it != dist.end());
          INFO("a = ", a.n, "/", a.d, " b = ", b.n, "/", b.d, " N = ", N);
          REQUIRE(static_cast<int>(path.size()) - 1 == it->second);
          ++checked;
        }
      }
    }
    CHECK(checked > 10000);
  }

  TEST_CASE("random divisors give closed, regular models with N-step intersections") {
    const auto& models = model_corpus();
    REQUIRE(models.size() == 25);
    for (const auto& m : models) {
      INFO("p = ", m.p, ", first factor ", m.horizontal.front().str());
      const auto& T = m.tree;
      // Predecessor closure.
      for (size_t i = 0; i < T.size(); ++i) {
        const auto& pt = T.node(i);
        const QVal& c = pt.is_type1() && !pt.limit().exact() ? pt.limit().approx() : pt.val();
        for (const auto& q : c.predecessors()) CHECK(T.find(PseudoValPoint::type2(q)).has_value());
      }
      // Inf closure.
      CHECK(T.is_inf_closed());
      for (size_t i = 0; i < T.size(); ++i)
        for (size_t j = i + 1; j < T.size(); ++j) CHECK(T.find(inf(T.node(i), T.node(j))).has_value());
      // Adjacent finite pairs intersect transversally.
      for (const auto& [a, b] : T.edges()) {
        if (!T.node(b).is_type2()) continue;
        const QVal& w = T.node(b).val();
        const QVal& v = T.node(a).val();
        CHECK(is_N_step(v.value(w.last_key()).value(), w.last_lambda().value(), w.pred().e()));
      }
      auto rep = verify_regularity(m);
      INFO(rep.node, " ", rep.residue_class, " ", rep.reason);
      CHECK(rep.ok);
    }
  }

  TEST_CASE("divisor validation rejects bad input") {
    DivisorSpec D{4, {X()}, true};
    CHECK_THROWS_AS(D.validate(), std::invalid_argument);
    D = {3, {X() * X()}, true};
    CHECK_THROWS_AS(D.validate(), std::invalid_argument);
    D = {3, {X(), X() * (X() - 1)}, true};
    CHECK_THROWS_AS(D.validate(), std::invalid_argument);
    D = {3, {X().scaled(Rat(2))}, true};
    CHECK_THROWS_AS(D.validate(), std::invalid_argument);
    D = {3, {X() + QPoly(Rat(1, 3))}, true};
    CHECK_THROWS_AS(D.validate(), std::invalid_argument);
  }

  TEST_CASE("a single rational point gives the Gauss valuation only") {
    ModelVals m = alg31(DivisorSpec{5, {X()}, true});
    REQUIRE(m.finite().size() == 1);
    CHECK(m.points[m.finite()[0]].val().is_gauss());
    CHECK(verify_regularity(m).ok);
  }

  TEST_CASE("the verifier rejects a model with a missing path node") {
    ModelVals m = quartic_result().model;
    // Drop [v0, v(x)=1], which connects v0 to [v0, v(x)=2].
    for (size_t i = 0; i < m.points.size(); ++i)
      if (m.points[i].str() == "[v0, v(x)=1]") {
        m.points.erase(m.points.begin() + static_cast<long>(i));
        m.provenance.erase(m.provenance.begin() + static_cast<long>(i));
        break;
      }
    REQUIRE(m.points.size() + 1 == quartic_result().model.points.size());
    m.rebuild();
    CHECK_FALSE(verify_regularity(m).ok);
  }
}
