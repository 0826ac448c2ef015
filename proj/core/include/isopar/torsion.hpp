#pragma once

// Cokernels of polynomial matrices over the local ring A = K[s]_(s):
// invariant factors, torsion profiles, and base change of two-term complexes
// to the truncations B_k.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "isopar/isotropic.hpp"

namespace isopar {

/// Dense matrix of polynomials in s.
template <Field K>
class PolyMatrix {
 public:
  PolyMatrix(K field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, PolyElement<K>(field)) {}

  /// Reads the layers of a B_k-matrix as exact polynomial coefficients.
  static PolyMatrix from_bk(const BkMatrix<K>& m) {
    PolyMatrix out(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        std::vector<typename K::Element> c;
        for (std::size_t t = 0; t < m.precision(); ++t) c.push_back(m.layer(t)(i, j));
        out(i, j) = PolyElement<K>(m.field(), std::move(c));
      }
    return out;
  }

  const K& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  PolyElement<K>& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const PolyElement<K>& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  long max_degree() const {
    long d = -1;
    for (const auto& x : data_) d = std::max(d, x.degree());
    return d;
  }

  /// Image in B_k.
  BkMatrix<K> truncated(std::size_t k) const {
    BkMatrix<K> out(field_, rows_, cols_, k);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto& c = (*this)(i, j).coeffs();
        for (std::size_t t = 0; t < std::min(k, c.size()); ++t) out.layer(t)(i, j) = c[t];
      }
    return out;
  }

  PolyMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    PolyMatrix out(field_, rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
    return out;
  }

  friend PolyMatrix operator*(const Matrix<K>& a, const PolyMatrix& b) {
    PolyMatrix out(b.field_, a.rows(), b.cols_);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t l = 0; l < a.cols(); ++l) {
        if (a(i, l).is_zero()) continue;
        const auto c = PolyElement<K>::constant(b.field_, a(i, l));
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = out(i, j) + c * b(l, j);
      }
    return out;
  }
  friend PolyMatrix operator*(const PolyMatrix& a, const Matrix<K>& b) {
    PolyMatrix out(a.field_, a.rows_, b.cols());
    for (std::size_t l = 0; l < a.cols_; ++l)
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(l, j).is_zero()) continue;
        const auto c = PolyElement<K>::constant(a.field_, b(l, j));
        for (std::size_t i = 0; i < a.rows_; ++i) out(i, j) = out(i, j) + a(i, l) * c;
      }
    return out;
  }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw UsageError("matrix product shape mismatch");
    PolyMatrix out(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l)
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = out(i, j) + a(i, l) * b(l, j);
    return out;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  K field_;
  std::size_t rows_, cols_;
  std::vector<PolyElement<K>> data_;
};

/// 0 -> M^0 -> M^1 -> 0 with M^i free of rank rank_i; d is rank1 x rank0.
template <Field K>
struct TwoTermComplex {
  std::size_t rank0 = 0;
  std::size_t rank1 = 0;
  PolyMatrix<K> d;

  explicit TwoTermComplex(PolyMatrix<K> map) : rank0(map.cols()), rank1(map.rows()), d(std::move(map)) {}
};

/// Cokernel structure A^free ⊕ A/s^{r_1} ⊕ ... ⊕ A/s^{r_m}, with 1 <= r_1 <= ... <= r_m.
struct TorsionProfile {
  std::size_t free_rank = 0;
  std::vector<std::size_t> exponents;

  bool is_zero() const { return free_rank == 0 && exponents.empty(); }
  friend bool operator==(const TorsionProfile&, const TorsionProfile&) = default;
};

/// Sorts the exponents and drops zeros. Throws UsageError on nothing.
TorsionProfile make_profile(std::size_t free_rank, std::vector<std::size_t> exponents);

/// m_j = #{i : r_i >= j} for j = 1..max exponent.
std::vector<std::size_t> m_profile(const TorsionProfile& p);

/// True iff every m_j is even. Also checks this against the direct
/// characterization (sorted exponents pair up as r_1 = r_2, r_3 = r_4, ...)
/// and throws InconsistencyError if they differ.
bool split_check(const TorsionProfile& p);
bool exponents_pair_up(const TorsionProfile& p);

/// Recovers the torsion part from h_k = k q0 + m_1 + ... + m_k, k = 1..len(h).
/// The m-sequence after the last given k is taken to be zero, so exponents at
/// least len(h) are reported as len(h). Throws InconsistentSequence if some
/// m_k is negative or the m-sequence increases.
TorsionProfile profile_from_dims(const std::vector<long>& h, long q0);

/// dim_K of (A^free ⊕ torsion) ⊗ B_k = k free + sum_i min(r_i, k).
std::size_t tensor_dim(const TorsionProfile& p, std::size_t k);

/// Rank over the fraction field K(s), by fraction-free elimination in K[s].
template <Field K>
std::size_t rank_over_fraction_field(PolyMatrix<K> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  PolyElement<K> prev = PolyElement<K>::constant(m.field(), m.field().one());
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m(i, j) = exact_quotient(m(r, c) * m(i, j) - m(i, c) * m(r, j), prev);
      m(i, c) = PolyElement<K>(m.field());
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

/// Determinant by fraction-free elimination in K[s].
template <Field K>
PolyElement<K> poly_determinant(PolyMatrix<K> m) {
  if (m.rows() != m.cols()) throw UsageError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  PolyElement<K> prev = PolyElement<K>::constant(m.field(), m.field().one());
  bool negate = false;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return PolyElement<K>(m.field());
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      negate = !negate;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) m(i, j) = exact_quotient(m(c, c) * m(i, j) - m(i, c) * m(c, j), prev);
      m(i, c) = PolyElement<K>(m.field());
    }
    prev = m(c, c);
  }
  if (n == 0) return PolyElement<K>::constant(m.field(), m.field().one());
  return negate ? -prev : prev;
}

namespace detail {

/// Local elimination over B_cap: repeatedly pivot on an entry of minimal
/// valuation (ties row-major) and clear its row and column. Returns the pivot
/// valuations in the order found; entries that vanish modulo s^cap are never pivots.
template <Field K>
std::vector<std::size_t> local_pivot_valuations(const PolyMatrix<K>& d, std::size_t cap) {
  using Series = TruncSeries<K>;
  const std::size_t rows = d.rows(), cols = d.cols();
  std::vector<Series> a;
  a.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a.push_back(d(i, j).truncated(cap));
  auto at = [&](std::size_t i, std::size_t j) -> Series& { return a[i * cols + j]; };

  std::vector<std::size_t> row_order(rows), col_order(cols);
  for (std::size_t i = 0; i < rows; ++i) row_order[i] = i;
  for (std::size_t j = 0; j < cols; ++j) col_order[j] = j;

  std::vector<std::size_t> vals;
  for (std::size_t step = 0; step < std::min(rows, cols); ++step) {
    std::size_t best = cap, bi = 0, bj = 0;
    for (std::size_t ii = step; ii < rows && best > 0; ++ii)
      for (std::size_t jj = step; jj < cols; ++jj) {
        const std::size_t v = at(row_order[ii], col_order[jj]).valuation();
        if (v < best) {
          best = v;
          bi = ii;
          bj = jj;
          if (v == 0) break;
        }
      }
    if (best == cap) break;
    std::swap(row_order[step], row_order[bi]);
    std::swap(col_order[step], col_order[bj]);
    const std::size_t pr = row_order[step], pc = col_order[step];
    const auto unit_inv = trunc_inv(at(pr, pc).shifted_down(best));
    std::vector<Series> g;  // (row_t[j] / s^v) * u^{-1}
    g.reserve(cols);
    for (std::size_t jj = 0; jj < cols; ++jj) g.push_back(at(pr, col_order[jj]).shifted_down(best) * unit_inv);
    for (std::size_t ii = step + 1; ii < rows; ++ii) {
      const std::size_t ri = row_order[ii];
      const Series factor = at(ri, pc);
      if (factor.is_zero()) continue;
      for (std::size_t jj = step + 1; jj < cols; ++jj) at(ri, col_order[jj]) -= factor * g[jj];
      at(ri, pc) = Series(d.field(), cap);
    }
    vals.push_back(best);
  }
  return vals;
}

}  // namespace detail

/// min(rows, cols) * max degree + 1: no invariant factor of a polynomial matrix
/// has valuation reaching this bound.
template <Field K>
std::size_t default_precision_cap(const PolyMatrix<K>& d) {
  const long deg = std::max(d.max_degree(), 0L);
  return std::min(d.rows(), d.cols()) * static_cast<std::size_t>(deg) + 1;
}

/// Invariant factors of coker(d) over A. With an explicit cap the elimination
/// runs once over B_cap and throws PrecisionExhausted if some invariant factor
/// is not resolved below it; by default the cap doubles from a small value up
/// to default_precision_cap.
template <Field K>
TorsionProfile snf_exponents(const PolyMatrix<K>& d, std::optional<std::size_t> precision_cap = std::nullopt) {
  if (precision_cap && *precision_cap == 0) throw UsageError("precision cap must be positive");
  const std::size_t generic_rank = rank_over_fraction_field(d);
  auto run = [&](std::size_t cap) -> std::optional<TorsionProfile> {
    auto vals = detail::local_pivot_valuations(d, cap);
    if (vals.size() > generic_rank) throw InconsistencyError("local elimination found more pivots than the rank");
    if (vals.size() < generic_rank) return std::nullopt;
    return make_profile(d.rows() - generic_rank, std::move(vals));
  };
  if (precision_cap) {
    auto p = run(*precision_cap);
    if (!p) throw PrecisionExhausted("an invariant factor has valuation >= " + std::to_string(*precision_cap));
    return *std::move(p);
  }
  const std::size_t bound = default_precision_cap(d);
  for (std::size_t cap = std::min<std::size_t>(bound, 8);; cap = std::min(2 * cap, bound)) {
    if (auto p = run(cap)) return *std::move(p);
    if (cap == bound) throw InconsistencyError("invariant factors exceed the proven valuation bound");
  }
}

struct DeterminantalValuations {
  std::vector<std::size_t> valuations;  // v(D_j), j = 1..generic rank
  bool exhaustive = false;             // every minor was enumerated
};

/// v(D_j) as the minimum valuation over all j x j minors.
template <Field K>
std::vector<std::size_t> determinantal_valuations_exhaustive(const PolyMatrix<K>& d) {
  const std::size_t m = d.rows(), n = d.cols();
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j <= std::min(m, n); ++j) {
    std::optional<std::size_t> best;
    std::vector<bool> rsel(m, false), csel(n, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(j), true);
    do {
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < m; ++i)
        if (rsel[i]) rows.push_back(i);
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(j), true);
      do {
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < n; ++c)
          if (csel[c]) cols.push_back(c);
        const auto det = poly_determinant(d.submatrix(rows, cols));
        if (!det.is_zero()) {
          const std::size_t v = det.valuation(0);
          if (!best || v < *best) best = v;
        }
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (!best) break;
    out.push_back(*best);
  }
  return out;
}

/// Independent draws for the compressed oracle. A single draw overshoots with
/// probability roughly 1/p, so small prime fields get about 2^-48 in total.
template <Field K>
int compression_draws(const K& field) {
  if constexpr (requires { field.modulus(); }) {
    const double bits = std::log2(static_cast<double>(field.modulus()));
    return std::max(3, static_cast<int>(std::ceil(48.0 / bits)));
  } else {
    return 3;
  }
}

/// v(D_j) via Cauchy-Binet compression: the leading j x j minor of P d Q for
/// constant P, Q is a K-combination of the j x j minors of d, so its valuation
/// is at least v(D_j), with equality for P, Q outside a proper subvariety.
/// Minimum over independent random draws; each draw runs fraction-free
/// elimination without pivoting, whose pivots are the leading minors.
template <Field K>
std::vector<std::size_t> determinantal_valuations_compressed(const PolyMatrix<K>& d, std::size_t generic_rank,
                                                             Rng& rng, std::optional<int> draw_count = std::nullopt) {
  const int draws = draw_count ? *draw_count : compression_draws(d.field());
  const std::size_t m = d.rows(), n = d.cols();
  std::vector<std::optional<std::size_t>> best(generic_rank);
  auto complete = [&] {
    return std::all_of(best.begin(), best.end(), [](const auto& x) { return x.has_value(); });
  };
  for (int draw = 0; draw < draws || !complete(); ++draw) {
    if (draw > 64) throw InconsistencyError("leading minors vanish for every random compression");
    auto a = Matrix<K>::random(d.field(), m, m, rng) * d * Matrix<K>::random(d.field(), n, n, rng);
    PolyElement<K> prev = PolyElement<K>::constant(d.field(), d.field().one());
    for (std::size_t k = 0; k < generic_rank; ++k) {
      if (a(k, k).is_zero()) break;
      const std::size_t v = a(k, k).valuation(0);
      if (!best[k] || v < *best[k]) best[k] = v;
      for (std::size_t i = k + 1; i < m; ++i)
        for (std::size_t j = k + 1; j < n; ++j) a(i, j) = exact_quotient(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
      prev = a(k, k);
    }
  }
  std::vector<std::size_t> out;
  for (const auto& x : best) out.push_back(*x);
  return out;
}

/// Number of j x j minors summed over j; used to decide whether enumeration is affordable.
std::size_t minor_count(std::size_t rows, std::size_t cols);

inline constexpr std::size_t kExhaustiveMinorBudget = 5000;

template <Field K>
DeterminantalValuations determinantal_divisor_valuations(const PolyMatrix<K>& d, std::uint64_t seed) {
  if (minor_count(d.rows(), d.cols()) <= kExhaustiveMinorBudget) return {determinantal_valuations_exhaustive(d), true};
  Rng rng(seed);
  return {determinantal_valuations_compressed(d, rank_over_fraction_field(d), rng), false};
}

/// Partial sums of the sorted invariant-factor exponents (units included)
/// against v(D_j).
bool profile_matches_determinantal(const TorsionProfile& p, std::size_t rows, const std::vector<std::size_t>& dvals);

/// The map A^r ⊕ A^r -> V, (a, b) |-> a W_1 - b W_2, with the stored
/// coefficients of the bases read as exact polynomials. Its kernel and its
/// cokernel over B_k both have dimension q_k.
template <Field K>
TwoTermComplex<K> model_complex(const BilinearSpace<K>& space, const IsotropicLattice<K>& w1,
                                const IsotropicLattice<K>& w2) {
  check_lattice(space, w1, "w1");
  check_lattice(space, w2, "w2");
  const auto map = hconcat(w1.basis().transpose(), -w2.basis().transpose());
  return TwoTermComplex<K>(PolyMatrix<K>::from_bk(map));
}

struct CohomologyDims {
  std::size_t h0 = 0;
  std::size_t h1 = 0;
};

/// Kernel and cokernel dimensions of d ⊗ B_k over K.
template <Field K>
CohomologyDims cohomology_dims(const TwoTermComplex<K>& c, std::size_t k) {
  if (k == 0) throw UsageError("k must be positive");
  const std::size_t rk = rank(flatten_map(c.d.truncated(k), BasisOrder::ascending, BasisOrder::ascending));
  return {k * c.rank0 - rk, k * c.rank1 - rk};
}

struct BaseChangeReport {
  TorsionProfile h1_profile;            // H^1 over A
  std::size_t generic_rank = 0;         // rank of d over the fraction field
  std::vector<std::size_t> h0, h1;      // over B_k, k = 1..k_max
  std::vector<std::size_t> predicted_h1;
  bool h1_ok = true;                    // H^1 commutes with base change
  bool h1_vanishes = false;             // hypothesis of the H^0 statement
  bool h0_ok = true;                    // checked only when h1_vanishes
  std::vector<long> h0_discrepancy;     // h0 - k (rank0 - generic_rank); recorded, never asserted
};

template <Field K>
BaseChangeReport check_base_change(const TwoTermComplex<K>& c, std::size_t k_max,
                                   std::optional<std::size_t> precision_cap = std::nullopt) {
  if (k_max == 0) throw UsageError("k_max must be positive");
  BaseChangeReport rep;
  rep.h1_profile = snf_exponents(c.d, precision_cap);
  rep.generic_rank = c.rank1 - rep.h1_profile.free_rank;
  rep.h1_vanishes = rep.h1_profile.is_zero();
  const std::size_t h0_generic = c.rank0 - rep.generic_rank;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const auto dims = cohomology_dims(c, k);
    const std::size_t predicted = tensor_dim(rep.h1_profile, k);
    rep.h0.push_back(dims.h0);
    rep.h1.push_back(dims.h1);
    rep.predicted_h1.push_back(predicted);
    if (dims.h1 != predicted) rep.h1_ok = false;
    const long discrepancy = static_cast<long>(dims.h0) - static_cast<long>(k * h0_generic);
    rep.h0_discrepancy.push_back(discrepancy);
    if (rep.h1_vanishes && discrepancy != 0) rep.h0_ok = false;
  }
  return rep;
}

/// Random complex with ranks in [min_rank, max_rank] and entry degree <= max_degree.
/// Mixes dense entries with random valuations, low-rank products and
/// diagonal power-of-s patterns in random constant bases.
template <Field K>
TwoTermComplex<K> random_two_term_complex(const K& field, std::size_t min_rank, std::size_t max_rank,
                                          std::size_t max_degree, Rng& rng) {
  if (min_rank == 0 || min_rank > max_rank) throw UsageError("rank range must satisfy 1 <= min <= max");
  const auto lo = static_cast<std::int64_t>(min_rank), hi = static_cast<std::int64_t>(max_rank);
  const auto rank0 = static_cast<std::size_t>(rng.between(lo, hi));
  const auto rank1 = static_cast<std::size_t>(rng.between(lo, hi));
  auto random_poly = [&](std::size_t min_val, std::size_t max_deg) {
    std::vector<typename K::Element> c(max_deg + 1, field.zero());
    for (std::size_t t = min_val; t <= max_deg; ++t) c[t] = field.random(rng);
    return PolyElement<K>(field, std::move(c));
  };
  PolyMatrix<K> d(field, rank1, rank0);
  switch (rng.below(3)) {
    case 0:
      for (std::size_t i = 0; i < rank1; ++i)
        for (std::size_t j = 0; j < rank0; ++j) {
          const std::size_t v = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(max_degree)));
          d(i, j) = random_poly(v, max_degree);
        }
      break;
    case 1: {
      const std::size_t inner =
          static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(std::min(rank0, rank1))));
      const std::size_t du = max_degree / 2, dv = max_degree - du;
      PolyMatrix<K> u(field, rank1, inner), w(field, inner, rank0);
      for (std::size_t i = 0; i < rank1; ++i)
        for (std::size_t l = 0; l < inner; ++l) u(i, l) = random_poly(static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(du))), du);
      for (std::size_t l = 0; l < inner; ++l)
        for (std::size_t j = 0; j < rank0; ++j) w(l, j) = random_poly(static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(dv))), dv);
      d = u * w;
      break;
    }
    default: {
      for (std::size_t i = 0; i < std::min(rank0, rank1); ++i) {
        if (rng.chance(1, 5)) continue;
        const std::size_t e = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(max_degree)));
        d(i, i) = PolyElement<K>::monomial(field, field.one(), e);
      }
      d = detail::random_invertible(field, rank1, rng) * d * detail::random_invertible(field, rank0, rng);
      break;
    }
  }
  return TwoTermComplex<K>(std::move(d));
}

}  // namespace isopar
