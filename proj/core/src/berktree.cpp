#include "regdiff/berktree.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace regdiff {

// ------------------------------------------------------------ points

PseudoValPoint PseudoValPoint::type2(QVal v) {
  if (v.is_infinite()) throw std::invalid_argument("type2: infinite pseudovaluation");
  PseudoValPoint p;
  p.val_ = std::move(v);
  return p;
}

PseudoValPoint PseudoValPoint::type1(QLimit l) {
  PseudoValPoint p;
  p.factor_ = l.exact() ? QPoly(l.approx().last_key()) : QPoly(l.g());
  p.limit_.emplace(std::move(l));
  return p;
}

const QLimit& PseudoValPoint::limit() const {
  if (!limit_) throw std::logic_error("limit(): not a TypeI point");
  return *limit_;
}

const QPoly& PseudoValPoint::factor() const {
  if (!limit_) throw std::logic_error("factor(): not a TypeI point");
  return factor_;
}

ExtRat PseudoValPoint::value(const std::vector<Rat>& f) const {
  return limit_ ? limit_->value(f) : val_.value(f);
}

bool PseudoValPoint::leq(const PseudoValPoint& w) const {
  if (is_type2()) return val_.leq(w);
  if (!w.is_type1()) return false;
  // Both are roots of their polynomials; the leaf discs isolate single roots.
  return val().leq(w) && w.value(factor_.coeffs()).is_inf() && w.val().leq(*this) &&
         value(w.factor_.coeffs()).is_inf();
}

std::string PseudoValPoint::str() const {
  if (is_type2()) return val_.str();
  if (limit_->exact()) return limit_->approx().str();
  std::string s = limit_->prefix().str();
  s.pop_back();
  std::string approx_key = val().base().poly_str(val().display_key(val().length()));
  return s + ", v(" + approx_key + ")>=" + val().last_lambda().str() + " -> root of " + factor_.str() + "]";
}

nlohmann::json PseudoValPoint::chain_json() const {
  nlohmann::json out = nlohmann::json::array();
  const QVal& c = is_type1() && !limit_->exact() ? limit_->prefix() : val();
  for (int i = 1; i <= c.length(); ++i) {
    if (i == 1 && c.lambda(1) == ExtRat(0)) continue;
    out.push_back({QPoly(c.display_key(i)).str(), c.lambda(i).str()});
  }
  if (is_type1() && !limit_->exact()) {
    // The leaf approximant, then the polynomial whose root in that disc is meant.
    const QVal& a = limit_->approx();
    out.push_back({QPoly(a.display_key(a.length())).str(), ">=" + a.last_lambda().str()});
    out.push_back({factor_.str(), "inf"});
  }
  return out;
}

bool ResidueClass::operator==(const ResidueClass& o) const {
  return v == o.v && v.is_equivalent(key.coeffs(), o.key.coeffs());
}

std::string ResidueClass::str() const { return "D(" + key.str() + ") at " + v.str(); }

// ------------------------------------------------------------ order operations

namespace {

/// [u, phi = t] where u <= w already, or u itself when t does not exceed u(phi).
QVal augment_to(const QVal& u, const QVal::Poly& phi, const ExtRat& t) {
  if (t <= u.value(phi)) return u;
  return u.augment(phi, t);
}

}  // namespace

PseudoValPoint inf(const PseudoValPoint& v, const PseudoValPoint& w) {
  if (v.leq(w)) return v;
  if (w.leq(v)) return w;
  const QVal& c = v.val();
  int last = v.is_type1() && !v.limit().exact() ? c.length() - 1 : c.length();
  for (int i = 1; i <= last; ++i) {
    ExtRat t = w.value(c.phi(i));
    if (t < c.lambda(i)) return PseudoValPoint::type2(augment_to(c.truncation(i - 1), c.phi(i), t));
  }
  // v is an inexact TypeI point and w lies above its prefix: walk the refinements.
  for (size_t k = 0;; ++k) {
    QVal u = v.limit().approximant(k);
    ExtRat t = w.value(u.last_key());
    if (t < u.last_lambda()) return PseudoValPoint::type2(augment_to(u.pred(), u.last_key(), t));
  }
}

QVal min_discoid_element(const QBasePtr& base, const QPoly& g, const Rat& t) {
  if (t < 0) throw std::invalid_argument("min_discoid_element: t must be >= 0");
  QVal v0 = gauss_q(base);
  if (g.is_zero() || g.lead() != 1 || !(v0.value(g.coeffs()) >= ExtRat(0)))
    throw std::invalid_argument("min_discoid_element: g must be monic and integral");
  auto branches = v0.approximants(g.coeffs());
  if (branches.size() != 1 || !branches[0].exact) {
    std::ostringstream os;
    os << "min_discoid_element: " << g.str() << " is reducible over the completion; select one of the branches";
    for (const auto& b : branches) os << " " << b.leaf.str();
    throw std::domain_error(os.str());
  }
  if (v0.value(g.coeffs()) >= ExtRat(t)) return v0;
  const QVal& chain = branches[0].leaf;
  for (int i = 1; i <= chain.length(); ++i) {
    QVal vi = chain.truncation(i);
    if (vi.value(g.coeffs()) < ExtRat(t)) continue;
    QVal prev = chain.truncation(i - 1);
    const auto& phi = chain.phi(i);
    auto ex = prev.expand(g.coeffs(), phi);
    Rat s = prev.value(phi).value();
    for (size_t j = 1; j < ex.size(); ++j) {
      if (ex[j].empty()) continue;
      Rat need = (t - prev.value(ex[j]).value()) / static_cast<long>(j);
      s = std::max(s, need);
    }
    return augment_to(prev, phi, ExtRat(s));
  }
  throw std::logic_error("min_discoid_element: value not attained");
}

QPoly direction(const QVal& v, const PseudoValPoint& w) {
  PseudoValPoint pv = PseudoValPoint::type2(v);
  if (!pv.lt(w)) throw std::invalid_argument("direction: " + w.str() + " is not above " + v.str());
  auto scan = [&](const QVal& c) -> std::optional<QPoly> {
    for (int i = 1; i <= c.length(); ++i) {
      QVal wi = c.truncation(i);
      if (!v.leq(wi)) continue;
      if (!(v == wi)) return QPoly(c.phi(i));
      if (i < c.length()) return QPoly(c.phi(i + 1));
      return std::nullopt;
    }
    return std::nullopt;
  };
  if (w.is_type2() || w.limit().exact()) {
    if (auto k = scan(w.val())) return *k;
    throw std::logic_error("direction: no key found");
  }
  for (size_t k = 0;; ++k)
    if (auto key = scan(w.limit().approximant(k))) return *key;
}

ResidueClass residue_class_of(const QVal& v, const PseudoValPoint& w) { return {v, direction(v, w)}; }

bool same_residue_class(const QVal& v, const PseudoValPoint& w1, const PseudoValPoint& w2) {
  return PseudoValPoint::type2(v).lt(inf(w1, w2));
}

size_t insert_unique(std::vector<PseudoValPoint>& points, const PseudoValPoint& p) {
  for (size_t i = 0; i < points.size(); ++i)
    if (points[i] == p) return i;
  points.push_back(p);
  return points.size() - 1;
}

std::vector<PseudoValPoint> inf_closure(const std::vector<PseudoValPoint>& points) {
  std::vector<PseudoValPoint> out;
  for (const auto& p : points) insert_unique(out, p);
  size_t n = out.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) insert_unique(out, inf(out[i], out[j]));
  return out;
}

std::vector<PseudoValPoint> predecessor_closure(const std::vector<PseudoValPoint>& points) {
  std::vector<PseudoValPoint> out;
  for (const auto& p : points) {
    insert_unique(out, p);
    const QVal& c = p.is_type1() && !p.limit().exact() ? p.limit().approx() : p.val();
    for (const auto& q : c.predecessors()) insert_unique(out, PseudoValPoint::type2(q));
  }
  return out;
}

// ------------------------------------------------------------ tree

ValuationTree::ValuationTree(std::vector<PseudoValPoint> nodes) : nodes_(std::move(nodes)) {
  size_t n = nodes_.size();
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j) below[i][j] = nodes_[i].leq(nodes_[j]);
  parent_.assign(n, std::nullopt);
  std::vector<int> rank(n, 0);
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < n; ++i) {
      if (!below[i][j]) continue;
      ++rank[j];
      // The points below j are totally ordered; keep the largest.
      if (!parent_[j] || below[*parent_[j]][i]) parent_[j] = i;
    }
    if (parent_[j]) edges_.emplace_back(*parent_[j], j);
  }
  order_.resize(n);
  for (size_t i = 0; i < n; ++i) order_[i] = i;
  std::stable_sort(order_.begin(), order_.end(), [&](size_t a, size_t b) { return rank[a] < rank[b]; });
}

std::vector<size_t> ValuationTree::children(size_t i) const {
  std::vector<size_t> out;
  for (size_t j = 0; j < nodes_.size(); ++j)
    if (parent_[j] == i) out.push_back(j);
  return out;
}

std::optional<size_t> ValuationTree::find(const PseudoValPoint& p) const {
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i] == p) return i;
  return std::nullopt;
}

bool ValuationTree::is_inf_closed() const {
  for (size_t i = 0; i < nodes_.size(); ++i)
    for (size_t j = i + 1; j < nodes_.size(); ++j)
      if (!find(inf(nodes_[i], nodes_[j]))) return false;
  return true;
}

nlohmann::json ValuationTree::to_json() const {
  nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array(),
                 kinds = nlohmann::json::array();
  for (const auto& p : nodes_) {
    nodes.push_back(p.chain_json());
    kinds.push_back(p.is_type1() ? "I" : "II");
  }
  for (const auto& [a, b] : edges_) edges.push_back({a, b});
  return {{"nodes", nodes}, {"kinds", kinds}, {"edges", edges}};
}

}  // namespace regdiff
