#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "regdiff/qvaluation.hpp"

namespace regdiff {

/// A point of the space of pseudovaluations on Q[x] extending val_p.
///
/// TypeII points are finite inductive valuations.  TypeI points are
/// infinite pseudovaluations v_xi attached to one root cluster of a
/// polynomial g; they are represented by a LimitValuation, which is either an
/// exact chain ending in (g_xi, inf) or a leaf approximant refined on demand.
class PseudoValPoint {
 public:
  enum class Kind { TypeII, TypeI };

  static PseudoValPoint type2(QVal v);
  static PseudoValPoint type1(QLimit l);
  static PseudoValPoint from_branch(const QVal::Branch& b) { return type1(QLimit(b)); }

  Kind kind() const { return limit_ ? Kind::TypeI : Kind::TypeII; }
  bool is_type1() const { return limit_.has_value(); }
  bool is_type2() const { return !limit_.has_value(); }

  /// TypeII: the valuation.  TypeI: the exact infinite chain or the leaf approximant.
  const QVal& val() const { return limit_ ? limit_->approx() : val_; }
  const QLimit& limit() const;
  const QBasePtr& base() const { return val().base_ptr(); }
  /// The polynomial whose root this TypeI point is (the exact factor when known).
  const QPoly& factor() const;

  ExtRat value(const std::vector<Rat>& f) const;
  ExtRat value(const QPoly& f) const { return value(f.coeffs()); }

  bool leq(const PseudoValPoint& w) const;
  bool lt(const PseudoValPoint& w) const { return leq(w) && !w.leq(*this); }
  friend bool operator==(const PseudoValPoint& a, const PseudoValPoint& b) { return a.leq(b) && b.leq(a); }

  std::string str() const;
  /// [[phi, lambda], ...] with the trivial first step omitted.  A TypeI point known only
  /// through an approximant ends in [phi, ">=lambda"], [g, "inf"]: the root of g in that disc.
  nlohmann::json chain_json() const;

 private:
  PseudoValPoint() = default;
  QVal val_;
  std::optional<QLimit> limit_;
  QPoly factor_;
};

/// The residue class D_v(phi) of a TypeII point v, phi a key for v.
struct ResidueClass {
  QVal v;
  QPoly key;
  bool operator==(const ResidueClass& o) const;
  std::string str() const;
};

/// Largest point below both v and w.
PseudoValPoint inf(const PseudoValPoint& v, const PseudoValPoint& w);

/// The minimal element of the discoid {v : v(g) >= t}.  Requires g irreducible over
/// the completion; otherwise throws std::domain_error naming the branches.
QVal min_discoid_element(const QBasePtr& base, const QPoly& g, const Rat& t);

/// A key phi for v with D_v(phi) the residue class containing w.  Requires v < w.
QPoly direction(const QVal& v, const PseudoValPoint& w);
ResidueClass residue_class_of(const QVal& v, const PseudoValPoint& w);
bool same_residue_class(const QVal& v, const PseudoValPoint& w1, const PseudoValPoint& w2);

/// Adds inf(a, b) for every pair, removing duplicates.
std::vector<PseudoValPoint> inf_closure(const std::vector<PseudoValPoint>& points);

/// Adds the predecessors of every point, removing duplicates.
std::vector<PseudoValPoint> predecessor_closure(const std::vector<PseudoValPoint>& points);

/// Appends p unless an equal point is already present; returns its index.
size_t insert_unique(std::vector<PseudoValPoint>& points, const PseudoValPoint& p);

/// Finite set of points with the Hasse diagram of the order.
class ValuationTree {
 public:
  ValuationTree() = default;
  explicit ValuationTree(std::vector<PseudoValPoint> nodes);

  const std::vector<PseudoValPoint>& nodes() const { return nodes_; }
  const std::vector<std::pair<size_t, size_t>>& edges() const { return edges_; }
  size_t size() const { return nodes_.size(); }
  const PseudoValPoint& node(size_t i) const { return nodes_.at(i); }
  /// Index of the largest node strictly below node i.
  std::optional<size_t> parent(size_t i) const { return parent_.at(i); }
  std::vector<size_t> children(size_t i) const;
  std::optional<size_t> find(const PseudoValPoint& p) const;
  /// Indices with every node after all nodes below it, root first.
  std::vector<size_t> order() const { return order_; }
  bool is_inf_closed() const;

  nlohmann::json to_json() const;

 private:
  std::vector<PseudoValPoint> nodes_;
  std::vector<std::optional<size_t>> parent_;
  std::vector<std::pair<size_t, size_t>> edges_;
  std::vector<size_t> order_;
};

}  // namespace regdiff
