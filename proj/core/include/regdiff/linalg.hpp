#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace regdiff {

template <class F>
using MatrixOf = std::vector<std::vector<typename F::Elem>>;

/// Reduces the row-major matrix M in place to reduced row echelon form,
/// considering only the first `cols` columns for pivots.  Returns the pivot columns.
template <class F>
std::vector<size_t> rref(const F& K, MatrixOf<F>& M, size_t cols) {
  using E = typename F::Elem;
  const size_t rows = M.size();
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t c = 0; c < cols && row < rows; ++c) {
    size_t piv = row;
    while (piv < rows && K.is_zero(M[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[row]);
    E inv = K.inv(M[row][c]);
    for (size_t j = c; j < M[row].size(); ++j) M[row][j] = K.mul(M[row][j], inv);
    for (size_t r = 0; r < rows; ++r) {
      if (r == row || K.is_zero(M[r][c])) continue;
      E f = M[r][c];
      for (size_t j = c; j < M[r].size(); ++j) M[r][j] = K.sub(M[r][j], K.mul(f, M[row][j]));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

/// Solves sum_i c_i vectors[i] = target over the field K by Gaussian elimination.
/// Returns std::nullopt if target is not in the span.
template <class F>
std::optional<std::vector<typename F::Elem>> linear_solve(
    const F& K, const std::vector<std::vector<typename F::Elem>>& vectors,
    const std::vector<typename F::Elem>& target) {
  using E = typename F::Elem;
  const size_t rows = target.size();
  const size_t cols = vectors.size();
  for (const auto& v : vectors)
    if (v.size() != rows) throw std::invalid_argument("linear_solve: inconsistent dimensions");
  MatrixOf<F> M(rows, std::vector<E>(cols + 1, K.zero()));
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) M[r][c] = vectors[c][r];
    M[r][cols] = target[r];
  }
  auto pivots = rref(K, M, cols);
  for (size_t r = pivots.size(); r < rows; ++r)
    if (!K.is_zero(M[r][cols])) return std::nullopt;
  std::vector<E> sol(cols, K.zero());
  for (size_t r = 0; r < pivots.size(); ++r) sol[pivots[r]] = M[r][cols];
  return sol;
}

/// A basis of {c : M c = 0} for the row-major matrix M with `cols` columns.
template <class F>
std::vector<std::vector<typename F::Elem>> nullspace(const F& K, MatrixOf<F> M, size_t cols) {
  for (const auto& r : M)
    if (r.size() != cols) throw std::invalid_argument("nullspace: inconsistent dimensions");
  auto pivots = rref(K, M, cols);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::Elem>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::Elem> v(cols, K.zero());
    v[free] = K.one();
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = K.neg(M[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Determinant of a square matrix over K.
template <class F>
typename F::Elem determinant(const F& K, MatrixOf<F> M) {
  const size_t n = M.size();
  typename F::Elem det = K.one();
  for (size_t c = 0; c < n; ++c) {
    if (M[c].size() != n) throw std::invalid_argument("determinant: matrix not square");
    size_t piv = c;
    while (piv < n && K.is_zero(M[piv][c])) ++piv;
    if (piv == n) return K.zero();
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = K.neg(det);
    }
    det = K.mul(det, M[c][c]);
    auto inv = K.inv(M[c][c]);
    for (size_t r = c + 1; r < n; ++r) {
      if (K.is_zero(M[r][c])) continue;
      auto f = K.mul(M[r][c], inv);
      for (size_t j = c; j < n; ++j) M[r][j] = K.sub(M[r][j], K.mul(f, M[c][j]));
    }
  }
  return det;
}

}  // namespace regdiff
