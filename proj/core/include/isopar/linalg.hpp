#pragma once

// Exact linear algebra over a field: echelon forms, rank, kernels, subspace
// intersections. Pivoting is deterministic: columns are scanned left to right
// and the topmost nonzero entry at or below the current row is taken.

#include <optional>
#include <type_traits>
#include <vector>

#include "isopar/matrix.hpp"

namespace isopar {

template <Field K>
struct EchelonForm {
  Matrix<K> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

/// Gauss-Jordan elimination to reduced row echelon form.
template <Field K>
EchelonForm<K> rref(Matrix<K> m) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(p, j), m(r, j));
    const auto inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const auto f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

/// Rank by row-echelon elimination (forward pass only).
template <Field K>
std::size_t gauss_rank(Matrix<K> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(p, j), m(r, j));
    const auto inv = m(r, c).inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m(i, c).is_zero()) continue;
      const auto f = m(i, c) * inv;
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// Fraction-free (Bareiss) rank of a rational matrix after clearing row
/// denominators; intermediate entries are minors of the input.
std::size_t bareiss_rank(const Matrix<RationalField>& m);

template <Field K>
std::size_t rank(const Matrix<K>& m) {
  if constexpr (std::is_same_v<K, RationalField>)
    return bareiss_rank(m);
  else
    return gauss_rank(m);
}

/// Columns form a basis of the right kernel. The basis is the canonical one
/// read off the reduced echelon form: free coordinate j is 1 in column j and 0
/// in the other basis columns.
template <Field K>
Matrix<K> kernel_basis(const Matrix<K>& m) {
  const auto ech = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<K> basis(m.field(), n, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = m.field().one();
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) basis(ech.pivots[i], k) = -ech.reduced(i, free[k]);
  }
  return basis;
}

/// Basis (as columns, in reduced echelon form of the transpose) of the span of the columns.
template <Field K>
Matrix<K> column_space_basis(const Matrix<K>& m) {
  const auto ech = rref(m.transpose());
  return ech.reduced.block(0, 0, ech.pivots.size(), ech.reduced.cols()).transpose();
}

/// Columns spanning colspan(a) ∩ colspan(b): for (x, y) in ker [a | -b], a x lies in both.
template <Field K>
Matrix<K> subspace_intersection(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw UsageError("subspaces live in different ambient spaces");
  const auto ker = kernel_basis(hconcat(a, -b));
  const auto gens = a * ker.block(0, 0, a.cols(), ker.cols());
  return column_space_basis(gens);
}

template <Field K>
std::size_t subspace_intersection_dim(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw UsageError("subspaces live in different ambient spaces");
  const auto ker = kernel_basis(hconcat(a, -b));
  return rank(a * ker.block(0, 0, a.cols(), ker.cols()));
}

template <Field K>
std::optional<Matrix<K>> try_inverse(const Matrix<K>& m) {
  if (!m.is_square()) throw UsageError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const auto ech = rref(hconcat(m, Matrix<K>::identity(m.field(), n)));
  if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1) return std::nullopt;
  return ech.reduced.block(0, n, n, n);
}

template <Field K>
Matrix<K> inverse(const Matrix<K>& m) {
  auto inv = try_inverse(m);
  if (!inv) throw NotAUnit("matrix is singular");
  return *std::move(inv);
}

}  // namespace isopar
