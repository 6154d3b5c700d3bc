#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "regdiff/berktree.hpp"

namespace regdiff {

/// Branch divisor on P^1: the zeros of the factors, plus possibly infinity.
struct DivisorSpec {
  long p = 0;
  std::vector<QPoly> factors;
  bool include_infinity = true;

  /// Throws std::invalid_argument unless the factors are monic, integral,
  /// squarefree, pairwise coprime, and p is prime.
  void validate() const;
};

enum class Provenance { Input, Predecessor, Infimum, PathStep1, PathStep2 };
std::string provenance_str(Provenance p);

/// The valuation set V* of a model of P^1, as a tree of pseudovaluations.
struct ModelVals {
  long p = 0;
  QBasePtr base;
  std::vector<PseudoValPoint> points;
  std::vector<Provenance> provenance;
  std::vector<QPoly> horizontal;
  bool include_infinity = true;
  ValuationTree tree;

  /// Rebuilds the tree after changing points.
  void rebuild() { tree = ValuationTree(points); }
  /// Finite nodes in tree order (root first).
  std::vector<size_t> finite() const;
  std::vector<size_t> branches() const;
  /// Inserts a point unless present; returns true if it was new.
  bool insert(const PseudoValPoint& pt, Provenance prov);

  nlohmann::json to_json() const;
};

/// t2 - t1 == N / (lcm(N, c1) lcm(N, c2)) with c_i the denominators of t_i.
bool is_N_step(const Rat& t1, const Rat& t2, long N);

/// Shortest strictly increasing list from a to b whose consecutive entries are N-steps.
std::vector<Rat> shortest_N_path(const Rat& a, const Rat& b, long N);

/// Step (1) then step (2) of the path insertion at the finite node v.
void alg32(ModelVals& model, const QVal& v);

/// The full model construction: predecessors, infima, then path insertions.
ModelVals alg31(const DivisorSpec& D);

struct RegularityReport {
  bool ok = true;
  std::string node;
  std::string residue_class;
  std::string reason;
  /// Number of (node, residue class) pairs examined.
  size_t checked = 0;
};

/// Checks predecessor- and inf-closure, then the regularity criteria at every
/// node and relevant residue class.
RegularityReport verify_regularity(const ModelVals& model);

struct ComponentGraph {
  std::vector<size_t> vertices;                  // finite node indices
  std::vector<std::pair<size_t, size_t>> edges;  // adjacent finite pairs
  struct Attachment {
    size_t branch;     // TypeI node index
    size_t component;  // finite node the branch meets
    QPoly key;         // residue class D_v(key) of the intersection point
  };
  std::vector<Attachment> horizontal;
  nlohmann::json to_json(const ModelVals& model) const;
};

ComponentGraph component_graph(const ModelVals& model);

}  // namespace regdiff
