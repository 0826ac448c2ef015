#pragma once

// Elements of the base rings: truncated power series B_k = K[s]/(s^k),
// exact polynomials in s, and the square-zero plane ring K[x,y]/(x,y)^2.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "isopar/errors.hpp"
#include "isopar/field.hpp"

namespace isopar {

/// An element of K[s]/(s^k). Coefficient j is the coefficient of s^j; the
/// vector length is exactly the precision k >= 1.
template <Field K>
class TruncSeries {
 public:
  using Element = typename K::Element;

  /// Zero at the given precision.
  TruncSeries(K field, std::size_t precision) : field_(field), c_(precision, field.zero()) {
    if (precision == 0) throw UsageError("series precision must be positive");
  }
  TruncSeries(K field, std::vector<Element> coeffs) : field_(field), c_(std::move(coeffs)) {
    if (c_.empty()) throw UsageError("series precision must be positive");
  }

  static TruncSeries constant(K field, std::size_t precision, Element value) {
    TruncSeries r(field, precision);
    r.c_[0] = std::move(value);
    return r;
  }
  static TruncSeries one(K field, std::size_t precision) { return constant(field, precision, field.one()); }
  /// s^j, which is zero when j >= precision.
  static TruncSeries monomial(K field, std::size_t precision, std::size_t j) {
    TruncSeries r(field, precision);
    if (j < precision) r.c_[j] = field.one();
    return r;
  }

  const K& field() const { return field_; }
  std::size_t precision() const { return c_.size(); }
  const Element& operator[](std::size_t j) const { return c_[j]; }
  Element& operator[](std::size_t j) { return c_[j]; }
  const std::vector<Element>& coeffs() const { return c_; }

  /// Index of the first nonzero coefficient; the precision for zero.
  std::size_t valuation() const {
    for (std::size_t j = 0; j < c_.size(); ++j)
      if (!c_[j].is_zero()) return j;
    return c_.size();
  }
  bool is_zero() const { return valuation() == c_.size(); }
  bool is_unit() const { return !c_[0].is_zero(); }

  /// Image in K[s]/(s^k) for k <= precision.
  TruncSeries truncated(std::size_t k) const {
    if (k == 0 || k > precision()) throw PrecisionExhausted("cannot truncate series to precision " + std::to_string(k));
    return TruncSeries(field_, std::vector<Element>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(k)));
  }

  /// Multiplication by s^v (coefficients move up, the top v are lost).
  TruncSeries shifted_up(std::size_t v) const {
    TruncSeries r(field_, precision());
    for (std::size_t j = v; j < precision(); ++j) r.c_[j] = c_[j - v];
    return r;
  }
  /// Division by s^v keeping the precision; the top v coefficients become zero.
  /// Exact as an operation on K[s]/(s^k) modulo s^(k-v).
  TruncSeries shifted_down(std::size_t v) const {
    TruncSeries r(field_, precision());
    for (std::size_t j = 0; j + v < precision(); ++j) r.c_[j] = c_[j + v];
    return r;
  }

  TruncSeries operator-() const {
    TruncSeries r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  TruncSeries& operator+=(const TruncSeries& b) {
    check_same(b);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += b.c_[j];
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& b) {
    check_same(b);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= b.c_[j];
    return *this;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_same(b);
    const std::size_t n = a.precision();
    TruncSeries r(a.field_, n);
    const std::size_t va = a.valuation(), vb = b.valuation();
    for (std::size_t i = va; i < n; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = vb; i + j < n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  TruncSeries& operator*=(const TruncSeries& b) { return *this = *this * b; }
  TruncSeries scaled(const Element& x) const {
    TruncSeries r(*this);
    for (auto& y : r.c_) y *= x;
    return r;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }

 private:
  void check_same(const TruncSeries& b) const {
    if (b.precision() != precision())
      throw UsageError("precision mismatch: " + std::to_string(precision()) + " vs " + std::to_string(b.precision()));
  }

  K field_;
  std::vector<Element> c_;
};

template <Field K>
TruncSeries<K> trunc_mul(const TruncSeries<K>& a, const TruncSeries<K>& b) {
  return a * b;
}

/// Inverse of a unit by the coefficient recursion b_n = -a_0^{-1} sum_{i=1}^{n} a_i b_{n-i}.
template <Field K>
TruncSeries<K> trunc_inv(const TruncSeries<K>& a) {
  if (!a.is_unit()) throw NotAUnit("series with zero constant term is not a unit");
  const std::size_t n = a.precision();
  TruncSeries<K> b(a.field(), n);
  const auto a0_inv = a[0].inverse();
  b[0] = a0_inv;
  for (std::size_t m = 1; m < n; ++m) {
    auto acc = a.field().zero();
    for (std::size_t i = 1; i <= m; ++i) acc += a[i] * b[m - i];
    b[m] = -(acc * a0_inv);
  }
  return b;
}

template <Field K>
std::string to_string(const TruncSeries<K>& a) {
  std::string out = "[";
  for (std::size_t j = 0; j < a.precision(); ++j) {
    if (j) out += ", ";
    out += to_string(a[j]);
  }
  return out + "]";
}

/// An exact polynomial in s. Coefficients are trimmed so the highest stored
/// coefficient is nonzero; zero is the empty vector.
template <Field K>
class PolyElement {
 public:
  using Element = typename K::Element;

  explicit PolyElement(K field) : field_(field) {}
  PolyElement(K field, std::vector<Element> coeffs) : field_(field), c_(std::move(coeffs)) { trim(); }

  static PolyElement constant(K field, Element value) { return PolyElement(field, {std::move(value)}); }
  static PolyElement monomial(K field, Element value, std::size_t degree) {
    std::vector<Element> c(degree + 1, field.zero());
    c[degree] = std::move(value);
    return PolyElement(field, std::move(c));
  }
  static PolyElement from_series(const TruncSeries<K>& a) { return PolyElement(a.field(), a.coeffs()); }

  const K& field() const { return field_; }
  const std::vector<Element>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Element coeff(std::size_t j) const { return j < c_.size() ? c_[j] : field_.zero(); }
  const Element& leading() const { return c_.back(); }

  /// s-adic valuation; `infinity` is returned for zero.
  std::size_t valuation(std::size_t infinity) const {
    for (std::size_t j = 0; j < c_.size(); ++j)
      if (!c_[j].is_zero()) return j;
    return infinity;
  }

  TruncSeries<K> truncated(std::size_t k) const {
    TruncSeries<K> r(field_, k);
    for (std::size_t j = 0; j < std::min(k, c_.size()); ++j) r[j] = c_[j];
    return r;
  }

  Element evaluate(const Element& x) const {
    Element acc = field_.zero();
    for (std::size_t j = c_.size(); j-- > 0;) acc = acc * x + c_[j];
    return acc;
  }

  PolyElement operator-() const {
    PolyElement r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend PolyElement operator+(const PolyElement& a, const PolyElement& b) {
    std::vector<Element> c(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
    for (std::size_t j = 0; j < a.c_.size(); ++j) c[j] += a.c_[j];
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[j] += b.c_[j];
    return PolyElement(a.field_, std::move(c));
  }
  friend PolyElement operator-(const PolyElement& a, const PolyElement& b) { return a + (-b); }
  friend PolyElement operator*(const PolyElement& a, const PolyElement& b) {
    if (a.is_zero() || b.is_zero()) return PolyElement(a.field_);
    std::vector<Element> c(a.c_.size() + b.c_.size() - 1, a.field_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return PolyElement(a.field_, std::move(c));
  }

  /// Quotient of an exact division. Throws InconsistencyError on a remainder.
  friend PolyElement exact_quotient(const PolyElement& a, const PolyElement& b) {
    if (b.is_zero()) throw NotAUnit("division by the zero polynomial");
    if (a.is_zero()) return PolyElement(a.field_);
    if (a.degree() < b.degree()) throw InconsistencyError("polynomial division is not exact");
    std::vector<Element> rem = a.c_;
    const std::size_t db = b.c_.size() - 1;
    std::vector<Element> quo(rem.size() - db, a.field_.zero());
    const auto lead_inv = b.leading().inverse();
    for (std::size_t i = quo.size(); i-- > 0;) {
      const auto t = rem[i + db] * lead_inv;
      quo[i] = t;
      if (t.is_zero()) continue;
      for (std::size_t j = 0; j <= db; ++j) rem[i + j] -= t * b.c_[j];
    }
    for (const auto& x : rem)
      if (!x.is_zero()) throw InconsistencyError("polynomial division is not exact");
    return PolyElement(a.field_, std::move(quo));
  }

  friend bool operator==(const PolyElement& a, const PolyElement& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  K field_;
  std::vector<Element> c_;
};

/// a + b x + c y in K[x,y]/(x,y)^2.
template <Field K>
struct SquareZeroPlaneElement {
  using Element = typename K::Element;

  Element a, b, c;

  static SquareZeroPlaneElement zero(const K& field) { return {field.zero(), field.zero(), field.zero()}; }

  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero(); }

  friend SquareZeroPlaneElement operator+(const SquareZeroPlaneElement& u, const SquareZeroPlaneElement& v) {
    return {u.a + v.a, u.b + v.b, u.c + v.c};
  }
  friend SquareZeroPlaneElement operator-(const SquareZeroPlaneElement& u, const SquareZeroPlaneElement& v) {
    return {u.a - v.a, u.b - v.b, u.c - v.c};
  }
  SquareZeroPlaneElement operator-() const { return {-a, -b, -c}; }
  // x*x = x*y = y*y = 0
  friend SquareZeroPlaneElement operator*(const SquareZeroPlaneElement& u, const SquareZeroPlaneElement& v) {
    return {u.a * v.a, u.a * v.b + u.b * v.a, u.a * v.c + u.c * v.a};
  }
  friend bool operator==(const SquareZeroPlaneElement& u, const SquareZeroPlaneElement& v) {
    return u.a == v.a && u.b == v.b && u.c == v.c;
  }
};

}  // namespace isopar
