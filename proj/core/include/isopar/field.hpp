#pragma once

// Coefficient fields. Two models are provided: prime fields F_p for odd primes p
// and the rationals. Elements carry no pointer back to a context, so they are
// plain values; the field object is only needed to create constants.

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "isopar/errors.hpp"
#include "isopar/random.hpp"

namespace isopar {

/// Residue modulo an odd prime, stored canonically in [0, p).
class Fp {
 public:
  Fp(std::uint32_t value, std::uint32_t modulus) : v_(value), p_(modulus) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(Fp a, Fp b) {
    std::uint32_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return {s, a.p_};
  }
  friend Fp operator-(Fp a, Fp b) { return {a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_}; }
  friend Fp operator*(Fp a, Fp b) {
    return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % a.p_), a.p_};
  }
  Fp operator-() const { return {v_ == 0 ? 0 : p_ - v_, p_}; }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }

  /// Multiplicative inverse by extended Euclid. Throws NotAUnit on zero.
  Fp inverse() const;
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }

  friend bool operator==(Fp a, Fp b) = default;

 private:
  std::uint32_t v_;
  std::uint32_t p_;
};

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  using Value = boost::multiprecision::cpp_rational;

  Rational() = default;
  explicit Rational(Value v) : v_(std::move(v)) {}
  Rational(std::int64_t num, std::int64_t den) : v_(num, den) {}

  const Value& value() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
  Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
  Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }

  Rational inverse() const;
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }

 private:
  Value v_;
};

/// F_p for an odd prime p < 2^31.
class PrimeField {
 public:
  using Element = Fp;

  /// Throws UsageError unless p is an odd prime below 2^31.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  Fp zero() const { return {0, p_}; }
  Fp one() const { return {1, p_}; }
  Fp from_int(std::int64_t n) const;
  Fp random(Rng& rng) const { return {static_cast<std::uint32_t>(rng.below(p_)), p_}; }
  /// Uniform nonzero element.
  Fp random_nonzero(Rng& rng) const { return {static_cast<std::uint32_t>(1 + rng.below(p_ - 1)), p_}; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

/// The field of rationals. Random elements are small integers so that
/// fuzzed entries stay readable.
class RationalField {
 public:
  using Element = Rational;

  std::uint32_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }

  Rational zero() const { return {}; }
  Rational one() const { return {1, 1}; }
  Rational from_int(std::int64_t n) const { return {n, 1}; }
  Rational random(Rng& rng) const { return {rng.between(-9, 9), 1}; }
  Rational random_nonzero(Rng& rng) const {
    std::int64_t n = rng.between(1, 9);
    return {rng.chance(1, 2) ? n : -n, 1};
  }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

template <class K>
concept Field = std::equality_comparable<K> && requires(const K& field, Rng& rng, std::int64_t n,
                                                        const typename K::Element& a) {
  { field.zero() } -> std::same_as<typename K::Element>;
  { field.one() } -> std::same_as<typename K::Element>;
  { field.from_int(n) } -> std::same_as<typename K::Element>;
  { field.random(rng) } -> std::same_as<typename K::Element>;
  { field.random_nonzero(rng) } -> std::same_as<typename K::Element>;
  { field.name() } -> std::convertible_to<std::string>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.inverse() } -> std::same_as<typename K::Element>;
  { a + a } -> std::same_as<typename K::Element>;
  { a * a } -> std::same_as<typename K::Element>;
  { a - a } -> std::same_as<typename K::Element>;
  { -a } -> std::same_as<typename K::Element>;
};

/// The unique x with x + x = a. Characteristic 2 is excluded by construction
/// of every field model, so this is always defined.
Fp halve(Fp a);
Rational halve(const Rational& a);

std::string to_string(Fp a);
std::string to_string(const Rational& a);

}  // namespace isopar
