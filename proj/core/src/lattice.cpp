#include "regdiff/lattice.hpp"

#include <sstream>
#include <stdexcept>

namespace regdiff {

namespace {

long val(const Rat& c, long p) { return to_long(Int(valp(c, p).value().get_num())); }

std::vector<RatVec> transpose_inverse(const std::vector<RatVec>& cols) {
  size_t g = cols.size();
  // Rows of the augmented matrix [A | I] with A[r][c] = cols[c][r].
  std::vector<RatVec> M(g, RatVec(2 * g, Rat(0)));
  for (size_t r = 0; r < g; ++r) {
    for (size_t c = 0; c < g; ++c) M[r][c] = cols[c][r];
    M[r][g + r] = 1;
  }
  for (size_t c = 0; c < g; ++c) {
    size_t piv = c;
    while (piv < g && M[piv][c] == 0) ++piv;
    if (piv == g) throw std::invalid_argument("lattice: singular generator matrix");
    std::swap(M[piv], M[c]);
    Rat inv = 1 / M[c][c];
    for (auto& x : M[c]) x *= inv;
    for (size_t r = 0; r < g; ++r) {
      if (r == c || M[r][c] == 0) continue;
      Rat f = M[r][c];
      for (size_t k = 0; k < 2 * g; ++k) M[r][k] -= f * M[c][k];
    }
  }
  // Columns of (A^-1)^T are the rows of A^-1.
  std::vector<RatVec> out(g, RatVec(g));
  for (size_t r = 0; r < g; ++r)
    for (size_t k = 0; k < g; ++k) out[r][k] = M[r][g + k];
  return out;
}

}  // namespace

Rat reduce_mod_pk(const Rat& c, long k, long p) {
  if (c == 0) return 0;
  long s = std::max({0L, -val(c, p), -k});
  Rat cs = c * rat_pow(Rat(p), s);
  Int M = Int(rat_pow(Rat(p), k + s));
  Int num = cs.get_num(), den = cs.get_den(), inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t());
  Int N = (num * inv) % M;
  if (N < 0) N += M;
  return Rat(N) / rat_pow(Rat(p), s);
}

std::vector<RatVec> plocal_hermite(const std::vector<RatVec>& cols, size_t g, long p) {
  std::vector<RatVec> pool;
  for (const auto& c : cols) {
    if (c.size() != g) throw std::invalid_argument("lattice: generator of wrong dimension");
    pool.push_back(c);
  }
  std::vector<RatVec> piv(g);
  std::vector<long> k(g);
  for (size_t ii = g; ii-- > 0;) {
    long best = 0;
    size_t at = pool.size();
    for (size_t j = 0; j < pool.size(); ++j) {
      if (pool[j][ii] == 0) continue;
      long vj = val(pool[j][ii], p);
      if (at == pool.size() || vj < best) {
        best = vj;
        at = j;
      }
    }
    if (at == pool.size()) throw std::invalid_argument("lattice: generators do not have full rank");
    RatVec col = pool[at];
    pool.erase(pool.begin() + static_cast<long>(at));
    Rat scale = rat_pow(Rat(p), best) / col[ii];
    for (auto& x : col) x *= scale;
    for (auto& other : pool) {
      if (other[ii] == 0) continue;
      Rat q = other[ii] / col[ii];
      for (size_t r = 0; r < g; ++r) other[r] -= q * col[r];
    }
    piv[ii] = std::move(col);
    k[ii] = best;
  }
  for (size_t j = 0; j < g; ++j)
    for (size_t ii = j; ii-- > 0;) {
      Rat r = reduce_mod_pk(piv[j][ii], k[ii], p);
      Rat q = (piv[j][ii] - r) / piv[ii][ii];
      if (q == 0) continue;
      for (size_t rr = 0; rr <= ii; ++rr) piv[j][rr] -= q * piv[ii][rr];
    }
  return piv;
}

DiffLattice::DiffLattice(long p, std::vector<std::string> labels, const std::vector<RatVec>& generators)
    : p_(p), labels_(std::move(labels)), cols_(plocal_hermite(generators, labels_.size(), p)) {}

std::vector<long> DiffLattice::pivot_exponents() const {
  std::vector<long> out;
  for (size_t j = 0; j < cols_.size(); ++j) out.push_back(val(cols_[j][j], p_));
  return out;
}

bool DiffLattice::contains(const RatVec& x) const {
  if (x.size() != rank()) throw std::invalid_argument("lattice: vector of wrong dimension");
  RatVec rest = x;
  for (size_t j = rank(); j-- > 0;) {
    if (rest[j] == 0) continue;
    Rat c = rest[j] / cols_[j][j];
    if (valp(c, p_) < ExtRat(0)) return false;
    for (size_t r = 0; r <= j; ++r) rest[r] -= c * cols_[j][r];
  }
  return true;
}

DiffLattice DiffLattice::dual() const { return DiffLattice(p_, labels_, transpose_inverse(cols_)); }

std::string DiffLattice::column_str(size_t j) const {
  std::ostringstream os;
  bool first = true;
  for (size_t r = cols_[j].size(); r-- > 0;) {
    const Rat& c = cols_[j][r];
    if (c == 0) continue;
    Rat a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const std::string& lab = labels_[r];
    if (lab == "1")
      os << rat_str(a);
    else if (a == 1)
      os << lab;
    else
      os << rat_str(a) << "*" << lab;
  }
  return first ? "0" : os.str();
}

DiffLattice sum_lattices(const DiffLattice& a, const DiffLattice& b) {
  if (a.p() != b.p() || a.labels() != b.labels()) throw std::invalid_argument("lattice: different ambients");
  std::vector<RatVec> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return DiffLattice(a.p(), a.labels(), gens);
}

DiffLattice intersect_lattices(const DiffLattice& a, const DiffLattice& b) {
  // (A n B)* = A* + B*.
  return sum_lattices(a.dual(), b.dual()).dual();
}

}  // namespace regdiff
