#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "isopar/errors.hpp"
#include "isopar/field.hpp"

namespace isopar {

/// Dense row-major matrix over a field K.
template <Field K>
class Matrix {
 public:
  using Element = typename K::Element;

  Matrix(K field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(K field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Integer entries, one initializer list per row.
  static Matrix from_ints(K field, std::initializer_list<std::initializer_list<long>> rows) {
    const std::size_t nr = rows.size();
    const std::size_t nc = nr ? rows.begin()->size() : 0;
    Matrix m(field, nr, nc);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != nc) throw UsageError("ragged matrix literal");
      std::size_t j = 0;
      for (long x : row) m(i, j++) = field.from_int(x);
      ++i;
    }
    return m;
  }

  static Matrix random(K field, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(field, rows, cols);
    for (auto& x : m.data_) x = field.random(rng);
    return m;
  }

  const K& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }
  /// M^T = -M and zero diagonal.
  bool is_skew_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!(*this)(i, i).is_zero()) return false;
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == -(*this)(j, i))) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw UsageError("block out of range");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw UsageError("block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix b(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = (*this)(i, idx[j]);
    return b;
  }

  Matrix operator-() const {
    Matrix r(*this);
    for (auto& x : r.data_) x = -x;
    return r;
  }
  Matrix& operator+=(const Matrix& b) {
    check_same_shape(b);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += b.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& b) {
    check_same_shape(b);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= b.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw UsageError("matrix product shape mismatch");
    Matrix r(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const auto& x = a(i, l);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(l, j);
      }
    return r;
  }
  Matrix scaled(const Element& x) const {
    Matrix r(*this);
    for (auto& y : r.data_) y *= x;
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw UsageError("matrix shape mismatch");
  }

  K field_;
  std::size_t rows_, cols_;
  std::vector<Element> data_;
};

template <Field K>
Matrix<K> hconcat(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw UsageError("hconcat row mismatch");
  Matrix<K> r(a.field(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

template <Field K>
Matrix<K> vconcat(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.cols()) throw UsageError("vconcat column mismatch");
  Matrix<K> r(a.field(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

/// Random skew-symmetric matrix of rank at most 2*half_rank: U V^T - V U^T.
template <Field K>
Matrix<K> random_skew(const K& field, std::size_t n, std::size_t half_rank, Rng& rng) {
  const auto u = Matrix<K>::random(field, n, half_rank, rng);
  const auto v = Matrix<K>::random(field, n, half_rank, rng);
  const auto uv = u * v.transpose();
  return uv - uv.transpose();
}

template <Field K>
std::string to_string(const Matrix<K>& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += to_string(m(i, j));
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace isopar
