#pragma once

#include <string>
#include <vector>

#include "regdiff/rational.hpp"

namespace regdiff {

using RatVec = std::vector<Rat>;

/// A full-rank Z_(p)-lattice in Q^g, given by generator columns.
///
/// The canonical form is upper triangular: column j has the pivot p^k_j in
/// row j, and every entry above a pivot p^k_i is reduced to [0, p^k_i).
/// Factors prime to p are units and are normalized away.
class DiffLattice {
 public:
  DiffLattice() = default;
  /// Throws std::invalid_argument if the generators do not have full rank.
  DiffLattice(long p, std::vector<std::string> labels, const std::vector<RatVec>& generators);

  long p() const { return p_; }
  size_t rank() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Canonical generator columns.
  const std::vector<RatVec>& basis() const { return cols_; }
  /// Exponents k_j of the pivots.
  std::vector<long> pivot_exponents() const;

  bool contains(const RatVec& x) const;
  bool operator==(const DiffLattice& o) const { return p_ == o.p_ && cols_ == o.cols_; }

  /// The dual lattice {y : y.x in Z_(p) for all x in L}.
  DiffLattice dual() const;

  /// "c1*label1 + c2*label2" for one canonical column.
  std::string column_str(size_t j) const;

 private:
  long p_ = 0;
  std::vector<std::string> labels_;
  std::vector<RatVec> cols_;
};

/// The representative of c modulo p^k Z_(p) in [0, p^k) with a p-power denominator.
Rat reduce_mod_pk(const Rat& c, long k, long p);

/// Canonical generators of the Z_(p)-span of the columns (full rank in Q^g required).
std::vector<RatVec> plocal_hermite(const std::vector<RatVec>& cols, size_t g, long p);

DiffLattice intersect_lattices(const DiffLattice& a, const DiffLattice& b);
/// The smallest lattice containing both.
DiffLattice sum_lattices(const DiffLattice& a, const DiffLattice& b);

}  // namespace regdiff
