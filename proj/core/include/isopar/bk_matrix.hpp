#pragma once

// Matrices over B_k = K[s]/(s^k), stored as k coefficient layers:
// M = M_0 + s M_1 + ... + s^{k-1} M_{k-1}.

#include <vector>

#include "isopar/linalg.hpp"
#include "isopar/series.hpp"

namespace isopar {

/// Ordering of the K-basis {s^t c_i} of B_k^n used when flattening.
/// `ascending`: c_1..c_n, s c_1..s c_n, ..., s^{k-1} c_n.
/// `descending`: s^{k-1} c_1..s^{k-1} c_n, ..., c_1..c_n.
enum class BasisOrder { ascending, descending };

template <Field K>
class BkMatrix {
 public:
  using Element = typename K::Element;

  /// Zero matrix. Precision 0 is allowed and denotes data known to no order.
  BkMatrix(K field, std::size_t rows, std::size_t cols, std::size_t precision)
      : field_(field), rows_(rows), cols_(cols), layers_(precision, Matrix<K>(field, rows, cols)) {}

  explicit BkMatrix(std::vector<Matrix<K>> layers, K field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), layers_(std::move(layers)) {
    for (const auto& l : layers_)
      if (l.rows() != rows_ || l.cols() != cols_) throw UsageError("layer shape mismatch");
  }

  static BkMatrix constant(const Matrix<K>& m, std::size_t precision) {
    BkMatrix r(m.field(), m.rows(), m.cols(), precision);
    if (precision) r.layers_[0] = m;
    return r;
  }
  static BkMatrix identity(K field, std::size_t n, std::size_t precision) {
    return constant(Matrix<K>::identity(field, n), precision);
  }
  static BkMatrix random(K field, std::size_t rows, std::size_t cols, std::size_t precision, Rng& rng) {
    BkMatrix r(field, rows, cols, precision);
    for (auto& l : r.layers_) l = Matrix<K>::random(field, rows, cols, rng);
    return r;
  }

  const K& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t precision() const { return layers_.size(); }

  /// Coefficient of s^j (zero for j beyond the precision).
  const Matrix<K>& layer(std::size_t j) const { return layers_.at(j); }
  Matrix<K>& layer(std::size_t j) { return layers_.at(j); }
  const std::vector<Matrix<K>>& layers() const { return layers_; }
  /// Reduction modulo s.
  const Matrix<K>& reduction() const {
    if (layers_.empty()) throw PrecisionExhausted("matrix has no known coefficients");
    return layers_[0];
  }

  TruncSeries<K> entry(std::size_t i, std::size_t j) const {
    TruncSeries<K> e(field_, precision());
    for (std::size_t t = 0; t < precision(); ++t) e[t] = layers_[t](i, j);
    return e;
  }
  void set_entry(std::size_t i, std::size_t j, const TruncSeries<K>& e) {
    if (e.precision() != precision()) throw UsageError("entry precision mismatch");
    for (std::size_t t = 0; t < precision(); ++t) layers_[t](i, j) = e[t];
  }

  bool is_zero() const {
    for (const auto& l : layers_)
      if (!l.is_zero()) return false;
    return true;
  }
  bool is_symmetric() const {
    for (const auto& l : layers_)
      if (!l.is_symmetric()) return false;
    return rows_ == cols_;
  }
  bool is_skew_symmetric() const {
    for (const auto& l : layers_)
      if (!l.is_skew_symmetric()) return false;
    return rows_ == cols_;
  }

  BkMatrix truncated(std::size_t k) const {
    if (k > precision()) throw PrecisionExhausted("cannot truncate to a higher precision");
    return BkMatrix(std::vector<Matrix<K>>(layers_.begin(), layers_.begin() + static_cast<std::ptrdiff_t>(k)), field_,
                    rows_, cols_);
  }
  /// Same data viewed at a higher precision, unknown layers set to zero.
  /// Only meaningful when the data is exact (polynomial of lower degree).
  BkMatrix padded(std::size_t k) const {
    BkMatrix r(field_, rows_, cols_, k);
    for (std::size_t t = 0; t < std::min(k, precision()); ++t) r.layers_[t] = layers_[t];
    return r;
  }
  /// Division by s: drops layer 0. Precision decreases by one.
  BkMatrix divided_by_s() const {
    if (layers_.empty()) throw PrecisionExhausted("cannot divide by s at precision 0");
    return BkMatrix(std::vector<Matrix<K>>(layers_.begin() + 1, layers_.end()), field_, rows_, cols_);
  }
  /// Multiplication by s^v at the same precision.
  BkMatrix shifted_up(std::size_t v) const {
    BkMatrix r(field_, rows_, cols_, precision());
    for (std::size_t t = v; t < precision(); ++t) r.layers_[t] = layers_[t - v];
    return r;
  }

  BkMatrix transpose() const {
    BkMatrix r(field_, cols_, rows_, precision());
    for (std::size_t t = 0; t < precision(); ++t) r.layers_[t] = layers_[t].transpose();
    return r;
  }
  BkMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    BkMatrix r(field_, nr, nc, precision());
    for (std::size_t t = 0; t < precision(); ++t) r.layers_[t] = layers_[t].block(r0, c0, nr, nc);
    return r;
  }
  BkMatrix select_columns(const std::vector<std::size_t>& idx) const {
    BkMatrix r(field_, rows_, idx.size(), precision());
    for (std::size_t t = 0; t < precision(); ++t) r.layers_[t] = layers_[t].select_columns(idx);
    return r;
  }

  BkMatrix operator-() const {
    BkMatrix r(*this);
    for (auto& l : r.layers_) l = -l;
    return r;
  }
  BkMatrix& operator+=(const BkMatrix& b) {
    check_same(b);
    for (std::size_t t = 0; t < precision(); ++t) layers_[t] += b.layers_[t];
    return *this;
  }
  BkMatrix& operator-=(const BkMatrix& b) {
    check_same(b);
    for (std::size_t t = 0; t < precision(); ++t) layers_[t] -= b.layers_[t];
    return *this;
  }
  friend BkMatrix operator+(BkMatrix a, const BkMatrix& b) { return a += b; }
  friend BkMatrix operator-(BkMatrix a, const BkMatrix& b) { return a -= b; }
  friend BkMatrix operator*(const BkMatrix& a, const BkMatrix& b) {
    if (a.precision() != b.precision()) throw UsageError("precision mismatch in product");
    if (a.cols_ != b.rows_) throw UsageError("matrix product shape mismatch");
    BkMatrix r(a.field_, a.rows_, b.cols_, a.precision());
    for (std::size_t i = 0; i < a.precision(); ++i) {
      if (a.layers_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < a.precision(); ++j) r.layers_[i + j] += a.layers_[i] * b.layers_[j];
    }
    return r;
  }
  /// Product with a constant matrix on the left.
  friend BkMatrix operator*(const Matrix<K>& a, const BkMatrix& b) {
    BkMatrix r(b.field_, a.rows(), b.cols_, b.precision());
    for (std::size_t t = 0; t < b.precision(); ++t) r.layers_[t] = a * b.layers_[t];
    return r;
  }
  friend BkMatrix operator*(const BkMatrix& a, const Matrix<K>& b) {
    BkMatrix r(a.field_, a.rows_, b.cols(), a.precision());
    for (std::size_t t = 0; t < a.precision(); ++t) r.layers_[t] = a.layers_[t] * b;
    return r;
  }

  friend bool operator==(const BkMatrix& a, const BkMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.layers_ == b.layers_;
  }

 private:
  void check_same(const BkMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_ || precision() != b.precision())
      throw UsageError("shape or precision mismatch");
  }

  K field_;
  std::size_t rows_, cols_;
  std::vector<Matrix<K>> layers_;
};

template <Field K>
BkMatrix<K> vconcat(const BkMatrix<K>& a, const BkMatrix<K>& b) {
  if (a.precision() != b.precision()) throw UsageError("precision mismatch");
  BkMatrix<K> r(a.field(), a.rows() + b.rows(), a.cols(), a.precision());
  for (std::size_t t = 0; t < a.precision(); ++t) r.layer(t) = vconcat(a.layer(t), b.layer(t));
  return r;
}

template <Field K>
BkMatrix<K> hconcat(const BkMatrix<K>& a, const BkMatrix<K>& b) {
  if (a.precision() != b.precision()) throw UsageError("precision mismatch");
  BkMatrix<K> r(a.field(), a.rows(), a.cols() + b.cols(), a.precision());
  for (std::size_t t = 0; t < a.precision(); ++t) r.layer(t) = hconcat(a.layer(t), b.layer(t));
  return r;
}

/// Inverse over B_k. With A = sum s^j A_j and X = sum s^j X_j, X_0 = A_0^{-1}
/// and X_j = -X_0 sum_{i=1}^{j} A_i X_{j-i}. Throws NotAUnit when A_0 is singular.
template <Field K>
BkMatrix<K> inverse(const BkMatrix<K>& a) {
  if (a.rows() != a.cols()) throw UsageError("inverse of a non-square matrix");
  BkMatrix<K> x(a.field(), a.rows(), a.cols(), a.precision());
  if (a.precision() == 0) return x;
  auto x0 = try_inverse(a.layer(0));
  if (!x0) throw NotAUnit("reduction modulo s is singular");
  x.layer(0) = *x0;
  for (std::size_t j = 1; j < a.precision(); ++j) {
    Matrix<K> acc(a.field(), a.rows(), a.cols());
    for (std::size_t i = 1; i <= j; ++i) acc += a.layer(i) * x.layer(j - i);
    x.layer(j) = -(*x0 * acc);
  }
  return x;
}

/// Matrix over K of the K-linear map B_k^cols -> B_k^rows induced by m, in the
/// chosen basis orderings of domain and codomain. Size (k rows) x (k cols).
template <Field K>
Matrix<K> flatten_map(const BkMatrix<K>& m, BasisOrder domain, BasisOrder codomain) {
  const std::size_t k = m.precision(), nr = m.rows(), nc = m.cols();
  Matrix<K> out(m.field(), k * nr, k * nc);
  auto index = [k](BasisOrder order, std::size_t power, std::size_t coord, std::size_t n) {
    return (order == BasisOrder::ascending ? power : k - 1 - power) * n + coord;
  };
  for (std::size_t t = 0; t < k; ++t)          // domain vector s^t c_j
    for (std::size_t u = t; u < k; ++u) {      // lands in s-degree u via layer u - t
      const auto& l = m.layer(u - t);
      for (std::size_t j = 0; j < nc; ++j) {
        const std::size_t col = index(domain, t, j, nc);
        for (std::size_t i = 0; i < nr; ++i) out(index(codomain, u, i, nr), col) = l(i, j);
      }
    }
  return out;
}

/// K-subspace of K^{n k} (ascending order) spanned by s^t times each row, t < k.
/// This is the flattening of the B_k-submodule generated by the rows.
template <Field K>
Matrix<K> flatten_row_span(const BkMatrix<K>& rows) {
  return flatten_map(rows.transpose(), BasisOrder::ascending, BasisOrder::ascending);
}

}  // namespace isopar
