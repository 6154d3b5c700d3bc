#include "regdiff/plmodel.hpp"

#include <sstream>
#include <stdexcept>

namespace regdiff {

namespace {

QVal augment_to(const QVal& u, const QVal::Poly& phi, const ExtRat& t) {
  if (t <= u.value(phi)) return u;
  return u.augment(phi, t);
}

/// Largest Farey neighbour of s to its right that does not exceed target.
Rat farey_step(const Rat& s, const Rat& target) {
  Int a = s.get_num(), d = s.get_den();
  Int e0, b0;
  if (d == 1) {
    e0 = 1;
    b0 = a + 1;
  } else {
    Int inv;
    mpz_invert(inv.get_mpz_t(), Int(a % d + d).get_mpz_t(), d.get_mpz_t());
    e0 = (d - inv) % d;
    b0 = (1 + a * e0) / d;
  }
  Rat num = Rat(b0) - target * Rat(e0);
  Rat den = target * Rat(d) - Rat(a);
  Int k = 0;
  if (num > 0) k = ceil_rat(num / den);
  return Rat(b0 + k * a) / Rat(e0 + k * d);
}

}  // namespace

std::string provenance_str(Provenance p) {
  switch (p) {
    case Provenance::Input: return "input";
    case Provenance::Predecessor: return "predecessor";
    case Provenance::Infimum: return "inf";
    case Provenance::PathStep1: return "N-path-step1";
    case Provenance::PathStep2: return "N-path-step2";
  }
  return "?";
}

void DivisorSpec::validate() const {
  if (!is_prime(p)) throw std::invalid_argument("divisor: p = " + std::to_string(p) + " is not prime");
  for (size_t i = 0; i < factors.size(); ++i) {
    const QPoly& f = factors[i];
    if (f.degree() < 1) throw std::invalid_argument("divisor: factor " + f.str() + " is constant");
    if (f.lead() != 1) throw std::invalid_argument("divisor: factor " + f.str() + " is not monic");
    if (gauss_valuation(f, p) < ExtRat(0))
      throw std::invalid_argument("divisor: factor " + f.str() + " is not integral; apply make_integral first");
    if (!squarefree_test(f)) throw std::invalid_argument("divisor: factor " + f.str() + " is not squarefree");
    for (size_t j = 0; j < i; ++j)
      if (gcd(f, factors[j]).degree() > 0)
        throw std::invalid_argument("divisor: factors " + factors[j].str() + " and " + f.str() + " are not coprime");
  }
}

// ------------------------------------------------------------ N-paths

bool is_N_step(const Rat& t1, const Rat& t2, long N) {
  if (N <= 0) throw std::invalid_argument("is_N_step: N must be positive");
  Int c1 = t1.get_den(), c2 = t2.get_den(), l1, l2;
  mpz_lcm(l1.get_mpz_t(), c1.get_mpz_t(), Int(N).get_mpz_t());
  mpz_lcm(l2.get_mpz_t(), c2.get_mpz_t(), Int(N).get_mpz_t());
  return t2 - t1 == Rat(N) / Rat(l1 * l2);
}

std::vector<Rat> shortest_N_path(const Rat& a, const Rat& b, long N) {
  if (N <= 0) throw std::invalid_argument("shortest_N_path: N must be positive");
  if (!(a < b)) throw std::invalid_argument("shortest_N_path: need " + rat_str(a) + " < " + rat_str(b));
  // In the coordinate s = N t the step condition becomes the Farey relation.
  Rat s = a * N, target = b * N;
  std::vector<Rat> out{a};
  while (s != target) {
    s = farey_step(s, target);
    out.push_back(s / N);
  }
  return out;
}

// ------------------------------------------------------------ model

std::vector<size_t> ModelVals::finite() const {
  std::vector<size_t> out;
  for (size_t i : tree.order())
    if (points[i].is_type2()) out.push_back(i);
  return out;
}

std::vector<size_t> ModelVals::branches() const {
  std::vector<size_t> out;
  for (size_t i : tree.order())
    if (points[i].is_type1()) out.push_back(i);
  return out;
}

bool ModelVals::insert(const PseudoValPoint& pt, Provenance prov) {
  size_t before = points.size();
  insert_unique(points, pt);
  if (points.size() == before) return false;
  provenance.push_back(prov);
  return true;
}

nlohmann::json ModelVals::to_json() const {
  nlohmann::json j = tree.to_json();
  j["p"] = p;
  nlohmann::json hor = nlohmann::json::array(), prov = nlohmann::json::array();
  for (const auto& h : horizontal) hor.push_back(h.str());
  for (auto pr : provenance) prov.push_back(provenance_str(pr));
  j["horizontal"] = hor;
  j["provenance"] = prov;
  j["include_infinity"] = include_infinity;
  return j;
}

void alg32(ModelVals& model, const QVal& v) {
  auto idx = model.tree.find(PseudoValPoint::type2(v));
  if (!idx) throw std::invalid_argument("alg32: " + v.str() + " is not a node");
  // Step (1): paths towards each finite neighbour above v.
  std::vector<PseudoValPoint> inserts;
  for (size_t c : model.tree.children(*idx)) {
    const auto& w = model.points[c];
    if (w.is_type1()) continue;
    QVal v0 = w.val().pred();
    const auto& phi = w.val().last_key();
    auto path = shortest_N_path(v.value(phi).value(), w.val().last_lambda().value(), v0.e());
    for (size_t k = 1; k + 1 < path.size(); ++k) inserts.push_back(PseudoValPoint::type2(augment_to(v0, phi, path[k])));
  }
  bool changed = false;
  for (const auto& pt : inserts) changed |= model.insert(pt, Provenance::PathStep1);
  if (changed) model.rebuild();
  // Step (2): lambda_n outside (1/N)Z with no finite neighbour raising phi_n.
  if (v.is_gauss()) return;
  QVal v0 = v.pred();
  long N = v0.e();
  Rat lam = v.last_lambda().value();
  if (Rat(lam * N).get_den() == 1) return;
  const auto& phin = v.last_key();
  idx = model.tree.find(PseudoValPoint::type2(v));
  for (size_t c : model.tree.children(*idx)) {
    const auto& w = model.points[c];
    if (w.is_type2() && w.value(phin) > ExtRat(lam)) return;
  }
  Rat target = Rat(ceil_rat(lam * N)) / N;
  auto path = shortest_N_path(lam, target, N);
  changed = false;
  for (size_t k = 1; k < path.size(); ++k)
    changed |= model.insert(PseudoValPoint::type2(augment_to(v0, phin, path[k])), Provenance::PathStep2);
  if (changed) model.rebuild();
}

ModelVals alg31(const DivisorSpec& D) {
  D.validate();
  ModelVals m;
  m.p = D.p;
  m.base = make_qbase(D.p);
  m.horizontal = D.factors;
  m.include_infinity = D.include_infinity;
  QVal v0 = gauss_q(m.base);
  m.insert(PseudoValPoint::type2(v0), Provenance::Predecessor);
  std::vector<PseudoValPoint> vinf;
  for (const auto& f : D.factors)
    for (const auto& b : v0.approximants(f.coeffs())) {
      vinf.push_back(PseudoValPoint::from_branch(b));
      m.insert(vinf.back(), Provenance::Input);
    }
  // Step 1: predecessors.
  for (const auto& pt : predecessor_closure(vinf)) m.insert(pt, Provenance::Predecessor);
  // Step 2: pairwise infima.
  size_t n1 = m.points.size();
  for (size_t i = 0; i < n1; ++i)
    for (size_t j = i + 1; j < n1; ++j) m.insert(inf(m.points[i], m.points[j]), Provenance::Infimum);
  m.rebuild();
  // Step 3: path insertions at every finite node of V_2*, root first.
  std::vector<QVal> todo;
  for (size_t i : m.finite()) todo.push_back(m.points[i].val());
  for (const auto& v : todo) alg32(m, v);
  return m;
}

// ------------------------------------------------------------ verification

RegularityReport verify_regularity(const ModelVals& model) {
  RegularityReport rep;
  auto fail = [&](std::string node, std::string cls, std::string reason) {
    rep.ok = false;
    rep.node = std::move(node);
    rep.residue_class = std::move(cls);
    rep.reason = std::move(reason);
    return rep;
  };
  const ValuationTree& T = model.tree;
  // Closure conditions.
  for (size_t i = 0; i < T.size(); ++i) {
    const auto& pt = T.node(i);
    const QVal& c = pt.is_type1() && !pt.limit().exact() ? pt.limit().approx() : pt.val();
    for (const auto& q : c.predecessors())
      if (!T.find(PseudoValPoint::type2(q)))
        return fail(pt.str(), "", "missing predecessor " + q.str());
  }
  for (size_t i = 0; i < T.size(); ++i)
    for (size_t j = i + 1; j < T.size(); ++j) {
      auto u = inf(T.node(i), T.node(j));
      if (!T.find(u)) return fail(T.node(i).str(), "", "missing infimum " + u.str() + " with " + T.node(j).str());
    }
  // Regularity at every node and residue class.
  for (size_t i : model.finite()) {
    const QVal& v = T.node(i).val();
    struct Cls {
      QPoly key;
      std::vector<size_t> finite, branches;
    };
    std::vector<Cls> classes;
    auto class_of = [&](const QPoly& key) -> Cls& {
      for (auto& c : classes)
        if (poly_deg<QField>(c.key.coeffs()) == poly_deg<QField>(key.coeffs()) &&
            v.is_equivalent(c.key.coeffs(), key.coeffs()))
          return c;
      classes.push_back({key, {}, {}});
      return classes.back();
    };
    for (size_t c : T.children(i)) {
      Cls& cl = class_of(direction(v, T.node(c)));
      (T.node(c).is_type2() ? cl.finite : cl.branches).push_back(c);
    }
    QPoly phin(v.last_key());
    class_of(phin);
    for (const auto& cl : classes) {
      ++rep.checked;
      std::string cls = "D(" + cl.key.str() + ")";
      if (cl.finite.size() + cl.branches.size() > 1)
        return fail(v.str(), cls, "several neighbours in one residue class");
      if (!cl.finite.empty()) {
        const QVal& w = T.node(cl.finite[0]).val();
        QVal w0 = w.pred();
        const auto& phi = w.last_key();
        if (!(augment_to(w0, phi, v.value(phi)) == v))
          return fail(v.str(), cls, "not on the segment below " + w.str());
        if (!is_N_step(v.value(phi).value(), w.last_lambda().value(), w0.e()))
          return fail(v.str(), cls, "intersection with " + w.str() + " is not an N-step");
        continue;
      }
      if (v.is_gauss()) continue;
      if (v.tau(v.length()) == 1) continue;
      bool is_phin = poly_deg<QField>(cl.key.coeffs()) == poly_deg<QField>(phin.coeffs()) &&
                     v.is_equivalent(cl.key.coeffs(), phin.coeffs());
      if (!is_phin) continue;
      return fail(v.str(), cls, "lambda_n outside the previous value group in the class of phi_n");
    }
  }
  return rep;
}

ComponentGraph component_graph(const ModelVals& model) {
  ComponentGraph g;
  const ValuationTree& T = model.tree;
  g.vertices = model.finite();
  for (const auto& [a, b] : T.edges()) {
    if (T.node(b).is_type2()) {
      g.edges.emplace_back(a, b);
    } else {
      const QVal& v = T.node(a).val();
      g.horizontal.push_back({b, a, direction(v, T.node(b))});
    }
  }
  return g;
}

nlohmann::json ComponentGraph::to_json(const ModelVals& model) const {
  nlohmann::json verts = nlohmann::json::array(), edges_j = nlohmann::json::array(),
                 hor = nlohmann::json::array();
  for (size_t v : vertices) verts.push_back({{"node", v}, {"valuation", model.points[v].str()}});
  for (const auto& [a, b] : edges) edges_j.push_back({a, b});
  for (const auto& h : horizontal)
    hor.push_back({{"branch", h.branch}, {"component", h.component}, {"residue_class", h.key.str()}});
  return {{"components", verts}, {"intersections", edges_j}, {"horizontal", hor}};
}

}  // namespace regdiff
