// End-to-end checks on the two worked examples and a good-reduction curve.
// Prints one line per criterion and exits nonzero if any criterion fails.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "regdiff/berktree.hpp"
#include "regdiff/sheaf.hpp"

using namespace regdiff;
using namespace regdiff::test;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
};

int failures = 0;

void report(int n, Verdict& v, const std::string& ok_detail) {
  std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << " ("
            << (v.pass ? ok_detail : v.detail.str()) << ")" << std::endl;
  if (!v.pass) ++failures;
}

using Named = std::map<std::string, QVal>;

QPoly P(const char* s) {
  // Small helper for the key polynomials of the examples.
  static const std::map<std::string, QPoly> keys = {
      {"x", X()}, {"x-1", X() - 1}, {"x+2", X() + 2}, {"f2", (X() + 2) * (X() + 2) + 8}};
  return keys.at(s);
}

QVal chain(long p, std::vector<std::pair<const char*, Rat>> steps) {
  std::vector<std::pair<QPoly, ExtRat>> s;
  for (const auto& [k, l] : steps) s.emplace_back(P(k), ExtRat(l));
  return make_chain(make_qbase(p), s);
}

/// Index of the finite model node equal to v, or -1.
long node_of(const ModelVals& m, const QVal& v) {
  auto i = m.tree.find(PseudoValPoint::type2(v));
  return i ? static_cast<long>(*i) : -1;
}

/// Checks that the finite nodes are exactly `expected` and the finite edges exactly `edges`.
void check_model(Verdict& verdict, const ModelVals& m, const Named& expected,
                 const std::vector<std::pair<std::string, std::string>>& edges) {
  verdict.require(m.finite().size() == expected.size(),
                  "found " + std::to_string(m.finite().size()) + " finite nodes, expected " +
                      std::to_string(expected.size()));
  std::map<long, std::string> name;
  for (const auto& [n, v] : expected) {
    long i = node_of(m, v);
    verdict.require(i >= 0, "missing " + n + " = " + v.str());
    name[i] = n;
  }
  std::set<std::pair<std::string, std::string>> found, want;
  for (const auto& [a, b] : m.tree.edges())
    if (m.points[b].is_type2() && name.count(static_cast<long>(a)) && name.count(static_cast<long>(b)))
      found.emplace(name[static_cast<long>(a)], name[static_cast<long>(b)]);
  for (const auto& e : edges) want.insert(e);
  verdict.require(found == want, "adjacency differs from the expected tree");
  RegularityReport rep = verify_regularity(m);
  verdict.require(rep.ok, "verify_regularity: " + rep.reason);
}

const ValuationRow* row_of(const DifferentialsResult& r, const QVal& v) {
  for (const auto& row : r.rows)
    if (row.v == v) return &row;
  return nullptr;
}

void check_table(Verdict& verdict, const DifferentialsResult& r, const std::vector<std::pair<std::string, QVal>>& cols,
                 const std::vector<Rat>& wy, const std::vector<Rat>& weta) {
  for (size_t k = 0; k < cols.size(); ++k) {
    const auto& [n, v] = cols[k];
    const ValuationRow* row = row_of(r, v);
    if (!row) {
      verdict.require(false, "no row for " + n);
      continue;
    }
    verdict.require(row->wy == wy[k], "w_" + n + "(y) = " + rat_str(row->wy) + ", expected " + rat_str(wy[k]));
    verdict.require(row->weta == weta[k],
                    "w_" + n + "(eta) = " + rat_str(row->weta) + ", expected " + rat_str(weta[k]));
  }
}

double run_ms(const SuperellipticCurve& c, DifferentialsResult& out) {
  auto t0 = std::chrono::steady_clock::now();
  out = integral_basis(c);
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

YFieldElem elem_of(const std::vector<KMonomial>& kb, const RatVec& coords) {
  YFieldElem g;
  for (size_t k = 0; k < kb.size(); ++k) {
    YFieldElem m = kb[k].elem();
    if (g.size() < m.size()) g.resize(m.size());
    for (size_t i = 0; i < m.size(); ++i) g[i] += m[i] * RatFunc(coords[k]);
  }
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  const long p3 = 3, p2 = 2;

  // ---- quartic cover at p = 3
  DifferentialsResult q;
  double q_ms = run_ms(quartic_cover(), q);
  std::vector<std::pair<std::string, QVal>> t1 = {
      {"v0", gauss_q(p3)},
      {"v1", chain(p3, {{"x", 2}})},
      {"v2", chain(p3, {{"x-1", Rat(3, 2)}})},
      {"u1", chain(p3, {{"x", 1}})},
      {"u2", chain(p3, {{"x-1", 1}})},
      {"u3", chain(p3, {{"x-1", 2}})}};
  Named n1(t1.begin(), t1.end());
  {
    Verdict v;
    check_model(v, q.model, n1, {{"v0", "u1"}, {"u1", "v1"}, {"v0", "u2"}, {"u2", "v2"}, {"v2", "u3"}});
    report(1, v, "6 finite nodes, tree and regularity as expected");
  }
  {
    Verdict v;
    // u3 pinned to the recomputed 11/4.
    check_table(v, q, t1, {0, 1, Rat(3, 4), Rat(1, 2), Rat(1, 2), Rat(3, 4)},
                {0, -1, Rat(3, 4), Rat(1, 2), Rat(1, 2), Rat(11, 4)});
    report(2, v, "w(y) and w(eta) on all 6 valuations, u3 at 11/4");
  }
  {
    Verdict v;
    DiffLattice want(p3, {"1", "x", "y"}, {{3, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    v.require(q.lattice == want, "lattice is <" + q.lattice.column_str(0) + ", ...>");
    v.require(q_ms < 10000, "took " + std::to_string(q_ms) + " ms");
    report(3, v, "lattice <3, x, y>, " + std::to_string(static_cast<long>(q_ms)) + " ms");
  }

  // ---- cubic cover at p = 2
  DifferentialsResult c;
  double c_ms = run_ms(cubic_cover(), c);
  std::vector<std::pair<std::string, QVal>> t2 = {
      {"v0", gauss_q(p2)},
      {"v1", chain(p2, {{"x", 1}})},
      {"vf11", chain(p2, {{"x", Rat(4, 3)}})},
      {"u2", chain(p2, {{"x", Rat(3, 2)}})},
      {"u3", chain(p2, {{"x", 2}})},
      {"vf21", chain(p2, {{"x+2", Rat(3, 2)}})},
      {"u1", chain(p2, {{"x+2", Rat(3, 2)}, {"f2", Rat(7, 2)}})},
      {"v2", chain(p2, {{"x+2", Rat(3, 2)}, {"f2", 4}})},
      {"u4", chain(p2, {{"x+2", 2}})}};
  Named n2(t2.begin(), t2.end());
  {
    Verdict v;
    check_model(v, c.model, n2,
                {{"v0", "v1"}, {"v1", "vf21"}, {"vf21", "u4"}, {"vf21", "u1"}, {"u1", "v2"}, {"v1", "vf11"},
                 {"vf11", "u2"}, {"u2", "u3"}});
    // Infinity is carried as a flag rather than a branch node.
    size_t branches = c.model.branches().size() + (c.model.include_infinity ? 1 : 0);
    v.require(branches == 4, "expected 4 branches including infinity, found " + std::to_string(branches));
    report(4, v, "9 finite nodes and 4 branches, tree and regularity as expected");
  }
  const QVal& v2 = n2.at("v2");
  const ValuationRow* r2 = row_of(c, v2);
  {
    Verdict v;
    check_table(v, c, t2, {0, Rat(7, 3), Rat(8, 3), Rat(8, 3), Rat(8, 3), 3, Rat(10, 3), Rat(11, 3), 3},
                {0, Rat(-5, 3), Rat(-10, 3), Rat(-4, 3), Rat(-4, 3), -4, Rat(-5, 3), Rat(-7, 3), -4});
    v.require(r2 && r2->vdx == 3, "v2(dx) != 3");
    v.require(r2 && r2->e == 3, "e at v2 != 3");
    QPoly f2 = P("f2");
    DefiningSystem ds = defining_system(v2, RatFunc(X() + 2) * RatFunc(Rat(1, 2)), RatFunc(f2.scaled(Rat(1, 16))));
    BiPoly F = BiPoly::T1() * BiPoly::T1() - BiPoly::T2().scaled(4) + BiPoly::constant(2);
    v.require(ds.F.normalized() == F.normalized(), "F_v2 = " + ds.F.str());
    report(5, v, "w(y), w(eta) on all 9 valuations; v2(dx) = 3, e = 3, F_v2 = T1^2 - 4*T2 + 2");
  }
  {
    Verdict v;
    const std::vector<std::string> labels = {"1", "x", "x^2", "x^3", "y", "x*y"};
    std::vector<RatVec> reduced = {{1, 0, 0, 0, 0, 0},   {-2, 1, 0, 0, 0, 0}, {-4, -4, 1, 0, 0, 0},
                                   {-40, 4, -2, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, -2, 1}};
    std::vector<RatVec> module = reduced;
    for (auto& a : module[0]) a *= 8;
    for (auto& a : module[1]) a *= 4;
    if (!r2) {
      v.require(false, "no row for v2");
    } else {
      ExtValuation w = extend_valuation(v2, c.curve);
      for (size_t k = 0; k < reduced.size(); ++k) {
        ExtRat printed = w.value(elem_of(c.kb, reduced[k]));
        v.require(printed == ExtRat(r2->reduced[k].value),
                  "reduced element " + std::to_string(k) + ": w = " + printed.str() + " vs computed " +
                      rat_str(r2->reduced[k].value));
      }
      std::vector<RatVec> ours;
      for (const auto& b : r2->reduced) ours.push_back(b.coords);
      v.require(DiffLattice(p2, labels, reduced) == DiffLattice(p2, labels, ours), "reduced bases span different lattices");
      DiffLattice printed_module(p2, labels, module);
      if (!(printed_module == r2->lattice)) {
        std::ostringstream os;
        os << "module basis: the printed list spans a proper sublattice of {g : w(g) >= " << rat_str(-r2->weta)
           << "}; e.g. 2*(x - 2) has w = " << w.value(elem_of(c.kb, {-4, 2, 0, 0, 0, 0})).str()
           << " but is not in its span; computed generators:";
        for (const auto& b : r2->module) os << " " << yelem_str(b.elem) << " (w=" << rat_str(b.value) << ")";
        v.require(false, os.str());
      }
    }
    report(6, v, "reduced and module bases at v2 match the printed lists");
  }
  {
    Verdict v;
    const std::vector<std::string> labels = {"1", "x", "x^2", "x^3", "y", "x*y"};
    DiffLattice want(p2, labels,
                     {{16, 0, 0, 0, 0, 0}, {0, 8, 0, 0, 0, 0}, {0, 0, 4, 0, 0, 0}, {0, -4, 0, 1, 0, 0},
                      {0, 0, 0, 0, 2, 0}, {0, 0, 0, 0, 0, 1}});
    v.require(c.lattice == want, "lattice differs");
    v.require(c_ms < 10000, "took " + std::to_string(c_ms) + " ms");
    report(7, v, "lattice <16, 8x, 4x^2, x^3 - 4x, 2y, xy>, " + std::to_string(static_cast<long>(c_ms)) + " ms");
  }
  {
    Verdict v;
    if (argc < 2) {
      v.require(false, "property suite binary not given");
    } else {
      std::string cmd = std::string("\"") + argv[1] + "\" --minimal > /dev/null 2>&1";
      int rc = std::system(cmd.c_str());
      v.require(rc == 0, "property suites failed (exit status " + std::to_string(rc) + ")");
    }
    report(8, v, "all property suites pass");
  }
  {
    Verdict v;
    DifferentialsResult g;
    double ms = run_ms(good_elliptic(), g);
    v.require(g.model.finite().size() == 1, "model has more than v0");
    v.require(g.rows.size() == 1 && g.rows[0].weta == 0, "w_v0(eta) != 0");
    v.require(g.lattice == DiffLattice(5, {"1"}, {{1}}), "lattice is not the unit lattice");
    v.require(verify_regularity(g.model).ok, "verify_regularity failed");
    v.require(ms < 10000, "too slow");
    report(9, v, "V = {v0}, w(eta) = 0, lattice <1>");
  }
  return failures == 0 ? 0 : 1;
}
