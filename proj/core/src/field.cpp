#include "isopar/field.hpp"

namespace isopar {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

Fp Fp::inverse() const {
  if (v_ == 0) throw NotAUnit("zero has no inverse in F_" + std::to_string(p_));
  std::int64_t r0 = p_, r1 = v_, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t0 < 0) t0 += p_;
  return {static_cast<std::uint32_t>(t0), p_};
}

Rational Rational::inverse() const {
  if (v_.is_zero()) throw NotAUnit("zero has no inverse in Q");
  return Rational(Value(1) / v_);
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p == 2) throw UsageError("characteristic 2 is not supported");
  if (p >= (1u << 31)) throw UsageError("prime must be below 2^31");
  if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not an odd prime");
}

std::string PrimeField::name() const { return "F_" + std::to_string(p_); }

Fp PrimeField::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r), p_};
}

Fp halve(Fp a) {
  std::uint64_t v = a.value();
  if (v % 2 != 0) v += a.modulus();
  return {static_cast<std::uint32_t>(v / 2), a.modulus()};
}

Rational halve(const Rational& a) { return Rational(a.value() / 2); }

std::string to_string(Fp a) { return std::to_string(a.value()); }

std::string to_string(const Rational& a) { return a.value().str(); }

}  // namespace isopar
