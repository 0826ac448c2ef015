#pragma once

// Rank sequences of skew-symmetric matrices over the truncations B_k.
//
// For M = sum_j s^j M_j with skew layers M_j, the map induced on B_k^q has, in
// the ascending basis on the domain and the descending basis on the codomain,
// the anti-triangular block matrix
//
//   N_k = [ M_{k-1} M_{k-2} ... M_0 ]
//         [ M_{k-2} M_{k-3} ... 0   ]
//         [   ...                   ]
//         [ M_0     0       ... 0   ]
//
// which is skew-symmetric, so r_k = rank N_k is even. N_k sits in the
// lower-left corner of N_{k+1} (drop the first block row and the last block
// column), so r_k is non-decreasing.

#include <optional>
#include <vector>

#include "isopar/bk_matrix.hpp"

namespace isopar {

template <Field K>
class SkewFamily {
 public:
  /// Throws UsageError if q == 0 or a layer is not q x q skew-symmetric.
  SkewFamily(K field, std::size_t q, std::vector<Matrix<K>> layers)
      : field_(field), q_(q), layers_(std::move(layers)) {
    if (q_ == 0) throw UsageError("skew family needs q > 0");
    for (const auto& l : layers_) {
      if (l.rows() != q_ || l.cols() != q_) throw UsageError("skew layer has wrong shape");
      if (!l.is_skew_symmetric()) throw UsageError("layer is not skew-symmetric");
    }
  }

  static SkewFamily zero(K field, std::size_t q) { return SkewFamily(field, q, {}); }
  /// Family whose layers are those of a skew BkMatrix.
  static SkewFamily from_matrix(const BkMatrix<K>& m) { return SkewFamily(m.field(), m.rows(), m.layers()); }

  const K& field() const { return field_; }
  std::size_t q() const { return q_; }
  std::size_t depth() const { return layers_.size(); }
  /// M_j; zero beyond the stored depth.
  Matrix<K> layer(std::size_t j) const { return j < layers_.size() ? layers_[j] : Matrix<K>(field_, q_, q_); }

  /// M mod s^k as a matrix over B_k.
  BkMatrix<K> truncated(std::size_t k) const {
    BkMatrix<K> m(field_, q_, q_, k);
    for (std::size_t j = 0; j < std::min(k, layers_.size()); ++j) m.layer(j) = layers_[j];
    return m;
  }

 private:
  K field_;
  std::size_t q_;
  std::vector<Matrix<K>> layers_;
};

/// Random family with `depth` layers. Each layer is zero with probability 1/4,
/// otherwise skew of random rank; this keeps the rank sequences varied.
template <Field K>
SkewFamily<K> random_skew_family(const K& field, std::size_t q, std::size_t depth, Rng& rng) {
  std::vector<Matrix<K>> layers;
  for (std::size_t j = 0; j < depth; ++j) {
    if (rng.chance(1, 4)) {
      layers.emplace_back(field, q, q);
    } else {
      layers.push_back(random_skew(field, q, static_cast<std::size_t>(rng.between(0, (q + 1) / 2)), rng));
    }
  }
  return SkewFamily<K>(field, q, std::move(layers));
}

/// The kq x kq block matrix whose (a, b) block is M_{k-1-a-b} (zero when the index is negative).
template <Field K>
Matrix<K> build_nk(const SkewFamily<K>& f, std::size_t k) {
  if (k == 0) throw UsageError("k must be positive");
  const std::size_t q = f.q();
  Matrix<K> n(f.field(), k * q, k * q);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; a + b < k; ++b) {
      const std::size_t j = k - 1 - a - b;
      if (j < f.depth()) n.set_block(a * q, b * q, f.layer(j));
    }
  return n;
}

/// dim_K of the image of M on B_k^q, by flattening the map directly.
template <Field K>
std::size_t image_dim_oracle(const SkewFamily<K>& f, std::size_t k) {
  if (k == 0) throw UsageError("k must be positive");
  return rank(flatten_map(f.truncated(k), BasisOrder::ascending, BasisOrder::ascending));
}

struct RankSequenceReport {
  std::size_t k_max = 0;
  std::vector<std::size_t> r;          // r_k for k = 1..k_max
  bool even_ok = true;
  bool monotone_ok = true;
  bool nesting_ok = true;              // N_k is the lower-left corner of N_{k+1}
  std::optional<std::size_t> mismatch; // first k where the two paths disagree
};

/// Computes r_k by the block matrix and by the flattened map for k <= k_max and
/// checks evenness, monotonicity and nesting. Throws InconsistencyError if the
/// two paths disagree.
template <Field K>
RankSequenceReport check_lemma21(const SkewFamily<K>& f, std::size_t k_max) {
  if (k_max == 0) throw UsageError("k_max must be positive");
  RankSequenceReport rep;
  rep.k_max = k_max;
  const std::size_t q = f.q();
  std::optional<Matrix<K>> prev;
  for (std::size_t k = 1; k <= k_max; ++k) {
    auto nk = build_nk(f, k);
    if (!nk.is_skew_symmetric()) throw InconsistencyError("N_" + std::to_string(k) + " is not skew-symmetric");
    const std::size_t block_rank = rank(nk);
    const std::size_t oracle = image_dim_oracle(f, k);
    if (block_rank != oracle && !rep.mismatch) rep.mismatch = k;
    if (prev && !(nk.block(q, 0, (k - 1) * q, (k - 1) * q) == *prev)) rep.nesting_ok = false;
    if (block_rank % 2 != 0) rep.even_ok = false;
    if (!rep.r.empty() && block_rank < rep.r.back()) rep.monotone_ok = false;
    rep.r.push_back(block_rank);
    prev = std::move(nk);
  }
  if (rep.mismatch)
    throw InconsistencyError("block rank and image dimension disagree at k = " + std::to_string(*rep.mismatch));
  return rep;
}

/// A square matrix over K[x,y]/(x,y)^2.
template <Field K>
struct SquareZeroMatrix {
  std::size_t n = 0;
  std::vector<SquareZeroPlaneElement<K>> entries;  // row-major

  SquareZeroPlaneElement<K>& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  const SquareZeroPlaneElement<K>& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

/// Matrix over K of the map induced on B^n, B = K[x,y]/(x,y)^2, in the K-basis
/// (1, x, y) of each coordinate: coordinate i contributes indices 3i, 3i+1, 3i+2.
template <Field K>
Matrix<K> flatten_square_zero(const K& field, const SquareZeroMatrix<K>& m) {
  const std::size_t n = m.n;
  Matrix<K> out(field, 3 * n, 3 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = m(i, j);
      // e * 1 = a + b x + c y;  e * x = a x;  e * y = a y
      out(3 * i, 3 * j) = e.a;
      out(3 * i + 1, 3 * j) = e.b;
      out(3 * i + 2, 3 * j) = e.c;
      out(3 * i + 1, 3 * j + 1) = e.a;
      out(3 * i + 2, 3 * j + 2) = e.a;
    }
  return out;
}

template <Field K>
std::size_t square_zero_image_dim(const K& field, const SquareZeroMatrix<K>& m) {
  return rank(flatten_square_zero(field, m));
}

/// [[0, 0, x], [0, 0, y], [-x, -y, 0]] over K[x,y]/(x,y)^2.
template <Field K>
SquareZeroMatrix<K> counterexample_matrix(const K& field) {
  SquareZeroMatrix<K> m{3, std::vector(9, SquareZeroPlaneElement<K>::zero(field))};
  const auto o = field.zero(), l = field.one();
  m(0, 2) = {o, l, o};
  m(1, 2) = {o, o, l};
  m(2, 0) = {o, -l, o};
  m(2, 1) = {o, o, -l};
  return m;
}

/// Image dimension of the fixed skew counterexample; the value is 3, which is odd.
template <Field K>
std::size_t counterexample_image_dim(const K& field) {
  return square_zero_image_dim(field, counterexample_matrix(field));
}

/// Random n x n skew matrix with (x,y)-linear entries and zero constant part.
template <Field K>
SquareZeroMatrix<K> random_square_zero_skew(const K& field, std::size_t n, Rng& rng) {
  SquareZeroMatrix<K> m{n, std::vector(n * n, SquareZeroPlaneElement<K>::zero(field))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      SquareZeroPlaneElement<K> e{field.zero(), field.random(rng), field.random(rng)};
      m(i, j) = e;
      m(j, i) = -e;
    }
  return m;
}

}  // namespace isopar
