#include "isopar/torsion.hpp"

#include <numeric>

namespace isopar {

TorsionProfile make_profile(std::size_t free_rank, std::vector<std::size_t> exponents) {
  std::erase(exponents, std::size_t{0});
  std::sort(exponents.begin(), exponents.end());
  return {free_rank, std::move(exponents)};
}

std::vector<std::size_t> m_profile(const TorsionProfile& p) {
  const std::size_t top = p.exponents.empty() ? 0 : p.exponents.back();
  std::vector<std::size_t> m(top, 0);
  for (std::size_t r : p.exponents)
    for (std::size_t j = 1; j <= r; ++j) ++m[j - 1];
  return m;
}

bool exponents_pair_up(const TorsionProfile& p) {
  auto e = p.exponents;
  std::sort(e.begin(), e.end());
  if (e.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < e.size(); i += 2)
    if (e[i] != e[i + 1]) return false;
  return true;
}

bool split_check(const TorsionProfile& p) {
  const auto m = m_profile(p);
  const bool even = std::all_of(m.begin(), m.end(), [](std::size_t x) { return x % 2 == 0; });
  if (even != exponents_pair_up(p)) throw InconsistencyError("m-profile parity and exponent pairing disagree");
  return even;
}

TorsionProfile profile_from_dims(const std::vector<long>& h, long q0) {
  if (h.empty()) throw UsageError("dimension sequence is empty");
  std::vector<long> m;
  long prev = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const long mk = h[k] - prev - q0;
    if (mk < 0) throw InconsistentSequence("m_" + std::to_string(k + 1) + " = " + std::to_string(mk) + " is negative");
    if (!m.empty() && mk > m.back())
      throw InconsistentSequence("m_" + std::to_string(k + 1) + " = " + std::to_string(mk) + " exceeds m_" +
                                 std::to_string(k) + " = " + std::to_string(m.back()));
    m.push_back(mk);
    prev = h[k];
  }
  // #{i : r_i = j} = m_j - m_{j+1}, with m after the last entry taken as 0.
  std::vector<std::size_t> exponents;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const long next = j + 1 < m.size() ? m[j + 1] : 0;
    for (long c = 0; c < m[j] - next; ++c) exponents.push_back(j + 1);
  }
  return make_profile(0, std::move(exponents));
}

std::size_t tensor_dim(const TorsionProfile& p, std::size_t k) {
  std::size_t d = k * p.free_rank;
  for (std::size_t r : p.exponents) d += std::min(r, k);
  return d;
}

std::size_t minor_count(std::size_t rows, std::size_t cols) {
  auto binom = [](std::size_t n, std::size_t k) {
    std::size_t b = 1;
    for (std::size_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
  };
  std::size_t total = 0;
  for (std::size_t j = 1; j <= std::min(rows, cols); ++j) total += binom(rows, j) * binom(cols, j);
  return total;
}

bool profile_matches_determinantal(const TorsionProfile& p, std::size_t rows, const std::vector<std::size_t>& dvals) {
  if (rows < p.free_rank || rows - p.free_rank != dvals.size()) return false;
  std::vector<std::size_t> all(dvals.size() - std::min(dvals.size(), p.exponents.size()), 0);
  if (all.size() + p.exponents.size() != dvals.size()) return false;
  all.insert(all.end(), p.exponents.begin(), p.exponents.end());
  std::size_t acc = 0;
  for (std::size_t j = 0; j < all.size(); ++j) {
    acc += all[j];
    if (acc != dvals[j]) return false;
  }
  return true;
}

}  // namespace isopar
