#include <doctest.h>

#include "fixtures.hpp"
#include "regdiff/lattice.hpp"

using namespace regdiff;
using namespace regdiff::test;

namespace {

using Mat = std::vector<RatVec>;  // columns

Rat det(const Mat& cols) {
  size_t g = cols.size();
  if (g == 1) return cols[0][0];
  Rat s = 0;
  for (size_t j = 0; j < g; ++j) {
    Mat minor;
    for (size_t k = 0; k < g; ++k) {
      if (k == j) continue;
      minor.push_back(RatVec(cols[k].begin() + 1, cols[k].end()));
    }
    Rat term = cols[j][0] * det(minor);
    s += (j % 2 ? -term : term);
  }
  return s;
}

/// Cramer's rule: x is in the Z_(p)-span of the columns iff every coordinate is p-integral.
bool member_oracle(const Mat& cols, const RatVec& x, long p) {
  Rat d = det(cols);
  for (size_t j = 0; j < cols.size(); ++j) {
    Mat m = cols;
    m[j] = x;
    if (valp(det(m) / d, p) < ExtRat(0)) return false;
  }
  return true;
}

Mat random_basis(std::mt19937_64& rng, long p, size_t g) {
  for (;;) {
    Mat cols(g, RatVec(g));
    for (auto& c : cols)
      for (auto& a : c) a = uniform(rng, 0, 2) == 0 ? Rat(0) : random_scaled_unit(rng, p, -2, 2);
    if (det(cols) != 0) return cols;
  }
}

std::vector<std::string> labels(size_t g) {
  std::vector<std::string> out{"1", "x", "y"};
  out.resize(g);
  return out;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("reduce_mod_pk picks the representative in [0, p^k)") {
    CHECK(reduce_mod_pk(Rat(13), 2, 3) == 4);
    CHECK(reduce_mod_pk(Rat(-1), 3, 2) == 7);
    CHECK(reduce_mod_pk(Rat(1, 2), 1, 3) == 2);
    CHECK(reduce_mod_pk(Rat(5, 4), 0, 2) == Rat(1, 4));
    CHECK(reduce_mod_pk(Rat(7, 4), -1, 2) == Rat(1, 4));
    CHECK(reduce_mod_pk(Rat(7), -1, 2) == 0);
    CHECK(reduce_mod_pk(Rat(0), 3, 5) == 0);
  }

  TEST_CASE("canonical form does not depend on the generators") {
    std::mt19937_64 rng(11);
    for (long p : {2, 3, 5})
      for (size_t g : {2u, 3u})
        for (int t = 0; t < 30; ++t) {
          Mat A = random_basis(rng, p, g);
          // A unimodular change of generators: add multiples of one column to another, permute, scale by units.
          Mat B = A;
          Rat k(uniform(rng, -5, 5));
          for (size_t r = 0; r < g; ++r) B[0][r] += k * B[g - 1][r];
          std::reverse(B.begin(), B.end());
          for (auto& a : B[0]) a *= Rat(p + 1) / (2 * p + 1);
          DiffLattice LA(p, labels(g), A), LB(p, labels(g), B);
          CHECK(LA == LB);
          for (size_t j = 0; j < g; ++j) {
            CHECK(LA.basis()[j][j] == rat_pow(Rat(p), LA.pivot_exponents()[j]));
            for (size_t r = j + 1; r < g; ++r) CHECK(LA.basis()[j][r] == 0);
          }
          CHECK(LA.dual().dual() == LA);
        }
  }

  TEST_CASE("intersection agrees with a brute-force membership oracle") {
    std::mt19937_64 rng(12);
    long inside = 0, outside = 0;
    for (long p : {2, 3, 5})
      for (size_t g : {2u, 3u})
        for (int t = 0; t < 12; ++t) {
          Mat A = random_basis(rng, p, g), B = random_basis(rng, p, g);
          DiffLattice LA(p, labels(g), A), LB(p, labels(g), B);
          DiffLattice I = intersect_lattices(LA, LB), S = sum_lattices(LA, LB);
          for (const auto& col : I.basis()) {
            CHECK(member_oracle(A, col, p));
            CHECK(member_oracle(B, col, p));
          }
          for (int s = -2; s <= 3; ++s) {
            Rat scale = rat_pow(Rat(p), s);
            for (int k = 0; k < 60; ++k) {
              RatVec x(g);
              for (auto& a : x) a = Rat(uniform(rng, -p * p, p * p)) * scale;
              bool in_a = member_oracle(A, x, p), in_b = member_oracle(B, x, p);
              CHECK(LA.contains(x) == in_a);
              CHECK(I.contains(x) == (in_a && in_b));
              if (in_a || in_b) CHECK(S.contains(x));
              (in_a && in_b ? inside : outside) += 1;
            }
          }
        }
    CHECK(inside > 100);
    CHECK(outside > 100);
  }

  TEST_CASE("intersection is commutative and associative") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
      long p = t % 2 ? 2 : 3;
      DiffLattice A(p, labels(3), random_basis(rng, p, 3)), B(p, labels(3), random_basis(rng, p, 3)),
          C(p, labels(3), random_basis(rng, p, 3));
      CHECK(intersect_lattices(A, B) == intersect_lattices(B, A));
      CHECK(intersect_lattices(intersect_lattices(A, B), C) == intersect_lattices(A, intersect_lattices(B, C)));
      CHECK(intersect_lattices(A, A) == A);
    }
  }

  TEST_CASE("rank-deficient generators are rejected") {
    CHECK_THROWS_AS(DiffLattice(3, labels(2), Mat{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}}), std::invalid_argument);
  }

  TEST_CASE("column strings") {
    DiffLattice L(2, {"1", "x", "x^2", "x^3"},
                  Mat{{Rat(16), 0, 0, 0}, {0, Rat(8), 0, 0}, {0, 0, Rat(4), 0}, {0, Rat(-4), 0, Rat(1)}});
    CHECK(L.column_str(0) == "16");
    CHECK(L.column_str(3) == "x^3 + 4*x");
  }
}
