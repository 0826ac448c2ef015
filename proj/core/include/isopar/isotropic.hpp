#pragma once

// Pairs of maximal totally isotropic lattices in a symmetric bilinear space
// over the truncations B_N of a discrete valuation ring.
//
// Vectors are row vectors of length 2r; a lattice is given by an r x 2r basis
// matrix and Q(u, v) = u G v^T for the Gram matrix G.
//
// q_k = dim_K (W_1 (x) B_k) ∩ (W_2 (x) B_k) is computed two ways:
//   * the oracle flattens both submodules into K^{2rk} and intersects;
//   * the structural path normalizes bases until W_2 is the graph
//       v_i = e_i + s z_i (i <= q),  v_i = f_i + s z_i (i > q),
//       z_i = sum_{j>q} lambda_ij e_j + sum_{j<=q} mu_ij f_j
//     over a hyperbolic frame adapted to W_1, and returns k q - r_k where r_k
//     is the rank sequence of the skew family s * mu.

#include <optional>
#include <string>
#include <vector>

#include "isopar/skew_hankel.hpp"

namespace isopar {

template <Field K>
class BilinearSpace {
 public:
  /// Throws UsageError unless gram is 2r x 2r symmetric with nondegenerate reduction.
  BilinearSpace(std::size_t r, BkMatrix<K> gram) : r_(r), gram_(std::move(gram)) {
    if (r_ == 0) throw UsageError("half-rank r must be positive");
    if (gram_.precision() == 0) throw UsageError("precision must be positive");
    if (gram_.rows() != 2 * r_ || gram_.cols() != 2 * r_) throw UsageError("gram matrix must be 2r x 2r");
    if (!gram_.is_symmetric()) throw UsageError("gram matrix is not symmetric");
    if (rank(gram_.reduction()) != 2 * r_) throw UsageError("gram matrix is degenerate modulo s");
  }

  /// [[0, I], [I, 0]] at the given precision.
  static BilinearSpace standard(const K& field, std::size_t r, std::size_t precision) {
    Matrix<K> g(field, 2 * r, 2 * r);
    for (std::size_t i = 0; i < r; ++i) {
      g(i, r + i) = field.one();
      g(r + i, i) = field.one();
    }
    return BilinearSpace(r, BkMatrix<K>::constant(g, precision));
  }

  const K& field() const { return gram_.field(); }
  std::size_t r() const { return r_; }
  std::size_t precision() const { return gram_.precision(); }
  const BkMatrix<K>& gram() const { return gram_; }

  /// Matrix of pairings Q(a_i, b_j) for the rows of a and b.
  BkMatrix<K> pairing(const BkMatrix<K>& a, const BkMatrix<K>& b) const { return a * gram_ * b.transpose(); }

  BilinearSpace truncated(std::size_t k) const { return BilinearSpace(r_, gram_.truncated(k)); }

 private:
  std::size_t r_;
  BkMatrix<K> gram_;
};

/// A rank-r submodule of V given by an r x 2r basis matrix (rows are basis vectors).
template <Field K>
class IsotropicLattice {
 public:
  explicit IsotropicLattice(BkMatrix<K> basis) : basis_(std::move(basis)) {}

  const BkMatrix<K>& basis() const { return basis_; }
  IsotropicLattice truncated(std::size_t k) const { return IsotropicLattice(basis_.truncated(k)); }

 private:
  BkMatrix<K> basis_;
};

/// Throws InvalidLattice unless w has shape r x 2r, is totally isotropic at the
/// working precision, and has reduction of rank r (free direct summand).
template <Field K>
void check_lattice(const BilinearSpace<K>& space, const IsotropicLattice<K>& w, const std::string& name = "lattice") {
  const auto& b = w.basis();
  if (b.rows() != space.r() || b.cols() != 2 * space.r()) throw InvalidLattice(name + " basis must be r x 2r");
  if (b.precision() != space.precision()) throw InvalidLattice(name + " precision differs from the space");
  if (!space.pairing(b, b).is_zero()) throw InvalidLattice(name + " is not totally isotropic");
  if (rank(b.reduction()) != space.r()) throw InvalidLattice(name + " is not a direct summand (reduction rank < r)");
}

/// A basis e_1..e_r, f_1..f_r of V (rows of e and f).
template <Field K>
struct HyperbolicFrame {
  BkMatrix<K> e;
  BkMatrix<K> f;

  BkMatrix<K> matrix() const { return vconcat(e, f); }
};

/// Q(e_i, e_j) = 0, Q(f_i, f_j) = 0, Q(f_i, e_j) = delta_ij, exactly.
template <Field K>
bool frame_is_hyperbolic(const BilinearSpace<K>& space, const HyperbolicFrame<K>& frame) {
  const auto id = BkMatrix<K>::identity(space.field(), space.r(), space.precision());
  return space.pairing(frame.e, frame.e).is_zero() && space.pairing(frame.f, frame.f).is_zero() &&
         space.pairing(frame.f, frame.e) == id;
}

/// Completes the basis of w1 to a hyperbolic frame. First solves
/// Q(w_i, e_j) = delta_ij using an invertible r x r minor of G e^T, then sets
/// f_i = w_i - 1/2 sum_j Q(w_i, w_j) e_j.
template <Field K>
HyperbolicFrame<K> hyperbolic_complete(const BilinearSpace<K>& space, const IsotropicLattice<K>& w1) {
  check_lattice(space, w1, "w1");
  const auto& field = space.field();
  const std::size_t r = space.r(), n = 2 * r, prec = space.precision();
  const auto& e = w1.basis();
  const auto h = space.gram() * e.transpose();  // 2r x r, column j is G e_j^T

  // rows of h whose reduction is invertible; W h = I then needs W supported there
  const auto ech = rref(h.reduction().transpose());
  if (ech.pivots.size() != r) throw InvalidLattice("w1 pairing with V is not surjective modulo s");
  BkMatrix<K> hs(field, r, r, prec);
  for (std::size_t t = 0; t < prec; ++t)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) hs.layer(t)(i, j) = h.layer(t)(ech.pivots[i], j);
  const auto hs_inv = inverse(hs);

  BkMatrix<K> w(field, r, n, prec);  // w = hs^{-1} placed in the pivot columns
  for (std::size_t t = 0; t < prec; ++t)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) w.layer(t)(i, ech.pivots[j]) = hs_inv.layer(t)(i, j);

  auto p = space.pairing(w, w);
  for (std::size_t t = 0; t < prec; ++t)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) p.layer(t)(i, j) = halve(p.layer(t)(i, j));
  HyperbolicFrame<K> frame{e, w - p * e};
  if (!frame_is_hyperbolic(space, frame)) throw InconsistencyError("hyperbolic completion failed its contracts");
  return frame;
}

template <Field K>
struct MuData {
  std::size_t q = 0;               // dim of the intersection of the reductions
  BkMatrix<K> lambda;              // r x (r - q), precision N - 1
  BkMatrix<K> mu;                  // q x q skew, precision N - 1
  HyperbolicFrame<K> aligned_frame;
  BkMatrix<K> aligned_w2;          // the normalized basis v_1..v_r of w2
};

namespace detail {

/// Constant r x r invertible T whose first q rows express a basis of the
/// reduction intersection in terms of the rows of w1 (echelon form), completed by unit rows.
template <Field K>
Matrix<K> intersection_adapted_change(const Matrix<K>& w1bar, const Matrix<K>& w2bar, std::size_t& q) {
  const std::size_t r = w1bar.rows();
  const auto ker = kernel_basis(hconcat(w1bar.transpose(), -w2bar.transpose()));
  const auto coeffs = rref(ker.block(0, 0, r, ker.cols()).transpose());
  q = coeffs.pivots.size();
  Matrix<K> t(w1bar.field(), r, r);
  t.set_block(0, 0, coeffs.reduced.block(0, 0, q, r));
  std::vector<bool> pivot(r, false);
  for (auto c : coeffs.pivots) pivot[c] = true;
  std::size_t row = q;
  for (std::size_t c = 0; c < r; ++c)
    if (!pivot[c]) t(row++, c) = w1bar.field().one();
  return t;
}

}  // namespace detail

/// Runs the normalization pipeline and reads off lambda and mu. Throws
/// InvalidLattice for invalid input and InconsistencyError if a step that must
/// succeed for valid input does not.
template <Field K>
MuData<K> align_and_extract_mu(const BilinearSpace<K>& space, const IsotropicLattice<K>& w1,
                               const IsotropicLattice<K>& w2) {
  check_lattice(space, w1, "w1");
  check_lattice(space, w2, "w2");
  const auto& field = space.field();
  const std::size_t r = space.r();

  // (1) basis of w1 whose first q reductions span the reduction intersection
  std::size_t q = 0;
  const auto t = detail::intersection_adapted_change(w1.basis().reduction(), w2.basis().reduction(), q);
  const IsotropicLattice<K> w1_adapted(t * w1.basis());

  // (2) hyperbolic frame
  auto frame = hyperbolic_complete(space, w1_adapted);

  // coordinate columns: alpha_j (e_j) at j, beta_j (f_j) at r + j
  std::vector<std::size_t> u1_cols, u2_cols;
  for (std::size_t j = 0; j < q; ++j) u1_cols.push_back(j);
  for (std::size_t j = q; j < r; ++j) u1_cols.push_back(r + j);
  for (std::size_t j = 0; j < q; ++j) u2_cols.push_back(r + j);
  for (std::size_t j = q; j < r; ++j) u2_cols.push_back(j);

  // (3) basis of w2 with reductions e_i (i <= q) and f_i + sum_{j>q} a_ij e_j (i > q)
  const auto coords = w2.basis() * inverse(frame.matrix());
  const auto x = coords.reduction().select_columns(u1_cols);
  const auto s_change = try_inverse(x);
  if (!s_change) throw InconsistencyError("w2 reduction does not project isomorphically onto U1");
  auto v = *s_change * w2.basis();
  const auto cbar = *s_change * coords.reduction();
  Matrix<K> a(field, r - q, r - q);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const auto& alpha = cbar(i, j);
      const auto& beta = cbar(i, r + j);
      const bool unit_alpha = i < q && j == i, unit_beta = i >= q && j == i;
      if (i >= q && j >= q) {
        a(i - q, j - q) = alpha;
      } else if (!(alpha == (unit_alpha ? field.one() : field.zero()))) {
        throw InconsistencyError("unexpected e-coordinate in aligned w2 reduction");
      }
      if (!(beta == (unit_beta ? field.one() : field.zero())))
        throw InconsistencyError("unexpected f-coordinate in aligned w2 reduction");
    }
  if (!a.is_skew_symmetric()) throw InconsistencyError("correction matrix (a_ij) is not skew-symmetric");

  // replace f_i by f_i + sum_{j>q} a_ij e_j for i > q
  for (std::size_t i = q; i < r; ++i)
    for (std::size_t j = q; j < r; ++j) {
      if (a(i - q, j - q).is_zero()) continue;
      for (std::size_t tt = 0; tt < space.precision(); ++tt)
        for (std::size_t c = 0; c < 2 * r; ++c)
          frame.f.layer(tt)(i, c) += a(i - q, j - q) * frame.e.layer(tt)(j, c);
    }
  if (!frame_is_hyperbolic(space, frame)) throw InconsistencyError("corrected frame is not hyperbolic");

  // (4) project onto U1 along U2; the restriction to w2 is an isomorphism
  const auto frame_inv = inverse(frame.matrix());
  const auto p = (v * frame_inv).select_columns(u1_cols);
  if (!(p.reduction() == Matrix<K>::identity(field, r))) throw InconsistencyError("projection is not identity mod s");
  v = inverse(p) * v;
  const auto c2 = v * frame_inv;
  if (!(c2.select_columns(u1_cols) == BkMatrix<K>::identity(field, r, space.precision())))
    throw InconsistencyError("normalized w2 does not project to the U1 basis");
  const auto u2_part = c2.select_columns(u2_cols);
  if (!u2_part.reduction().is_zero()) throw InconsistencyError("U2-component of w2 is not divisible by s");

  // (5) z = (U2 component) / s; mu from rows i <= q, f-columns; lambda from e-columns
  const auto z = u2_part.divided_by_s();
  MuData<K> out{q, z.block(0, q, r, r - q), z.block(0, 0, q, q), std::move(frame), std::move(v)};
  if (!(out.mu + out.mu.transpose()).is_zero()) throw InconsistencyError("extracted mu is not skew-symmetric");
  return out;
}

/// q_k by flattening both submodules of V (x) B_k and intersecting.
template <Field K>
std::size_t intersection_dim_oracle(const BilinearSpace<K>& space, const IsotropicLattice<K>& w1,
                                    const IsotropicLattice<K>& w2, std::size_t k) {
  if (k == 0) throw UsageError("k must be positive");
  if (k > space.precision()) throw PrecisionExhausted("k exceeds the working precision");
  return subspace_intersection_dim(flatten_row_span(w1.basis().truncated(k)),
                                   flatten_row_span(w2.basis().truncated(k)));
}

/// k q - r_k, where r_k is the image dimension on B_k^q of the skew family s * mu.
template <Field K>
std::size_t skew_intersection_dim(const K& field, std::size_t q, const BkMatrix<K>& mu, std::size_t k) {
  if (k == 0) throw UsageError("k must be positive");
  if (q == 0) return 0;
  if (k > mu.precision() + 1) throw PrecisionExhausted("mu is not known to the precision needed for k");
  std::vector<Matrix<K>> layers;
  layers.emplace_back(field, q, q);  // M_0 = 0
  for (std::size_t j = 0; j + 1 < k; ++j) layers.push_back(mu.layer(j));
  const SkewFamily<K> family(field, q, std::move(layers));
  return k * q - rank(build_nk(family, k));
}

/// q_k from the extracted mu.
template <Field K>
std::size_t intersection_dim_structural(const MuData<K>& data, std::size_t k) {
  return skew_intersection_dim(data.mu.field(), data.q, data.mu, k);
}

struct ParityReport {
  std::vector<std::size_t> q;   // q_k, k = 1..k_max
  std::vector<long> d;          // d_k = k q_1 - q_k
  bool even_ok = true;
  bool monotone_ok = true;
  bool path_agreement = true;
  bool hyperbolic_ok = true;
  bool mu_skew_ok = true;
  bool transversal_ok = true;   // q_1 = 0 implies q_k = 0
};

/// Both paths for k = 1..k_max and the parity/monotonicity checks on d_k.
/// Throws InconsistencyError if the paths disagree.
template <Field K>
ParityReport check_theorem(const BilinearSpace<K>& space, const IsotropicLattice<K>& w1,
                           const IsotropicLattice<K>& w2, std::size_t k_max, const MuData<K>* precomputed = nullptr) {
  if (k_max == 0) throw UsageError("k_max must be positive");
  if (k_max > space.precision()) throw PrecisionExhausted("k_max exceeds the working precision");
  std::optional<MuData<K>> local;
  if (!precomputed) local = align_and_extract_mu(space, w1, w2);
  const MuData<K>& data = precomputed ? *precomputed : *local;

  ParityReport rep;
  rep.hyperbolic_ok = frame_is_hyperbolic(space, data.aligned_frame);
  rep.mu_skew_ok = (data.mu + data.mu.transpose()).is_zero();
  for (std::size_t k = 1; k <= k_max; ++k) {
    const std::size_t oracle = intersection_dim_oracle(space, w1, w2, k);
    const std::size_t structural = intersection_dim_structural(data, k);
    if (oracle != structural) {
      rep.path_agreement = false;
      throw InconsistencyError("q_" + std::to_string(k) + ": oracle " + std::to_string(oracle) + " vs structural " +
                               std::to_string(structural));
    }
    rep.q.push_back(oracle);
    const long dk = static_cast<long>(k * rep.q.front()) - static_cast<long>(oracle);
    if (dk % 2 != 0) rep.even_ok = false;
    if (!rep.d.empty() && dk < rep.d.back()) rep.monotone_ok = false;
    rep.d.push_back(dk);
    if (rep.q.front() == 0 && oracle != 0) rep.transversal_ok = false;
  }
  return rep;
}

enum class GeneratorMode { mu_param, cayley };

std::string to_string(GeneratorMode mode);
GeneratorMode parse_generator_mode(const std::string& s);

struct GeneratorOptions {
  std::optional<std::size_t> q;  // reduction intersection dimension; random when absent
  bool zero_mu = false;          // mu-param: plant s-adic data equal to zero
};

template <Field K>
struct IsotropicInstance {
  BilinearSpace<K> space;
  IsotropicLattice<K> w1, w2;
  std::size_t planted_q = 0;
  std::optional<BkMatrix<K>> planted_mu;  // mu-param only, precision N - 1
};

namespace detail {

/// Random constant invertible matrix.
template <Field K>
Matrix<K> random_invertible(const K& field, std::size_t n, Rng& rng) {
  for (;;) {
    auto m = Matrix<K>::random(field, n, n, rng);
    if (rank(m) == n) return m;
  }
}

/// Random polynomial skew matrix with layers 1..degree (layer 0 zero), each of
/// random rank and occasionally zero.
template <Field K>
BkMatrix<K> random_skew_series(const K& field, std::size_t n, std::size_t precision, Rng& rng) {
  BkMatrix<K> m(field, n, n, precision);
  for (std::size_t t = 0; t < precision; ++t) {
    if (n < 2 || rng.chance(1, 3)) continue;
    m.layer(t) = random_skew(field, n, static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(n / 2))), rng);
  }
  return m;
}

/// (I - X)(I + X)^{-1}. Returns nothing when I + X is not a unit.
template <Field K>
std::optional<BkMatrix<K>> cayley_transform(const BkMatrix<K>& x) {
  const auto id = BkMatrix<K>::identity(x.field(), x.rows(), x.precision());
  if (!try_inverse((id + x).reduction())) return std::nullopt;
  return (id - x) * inverse(id + x);
}

inline constexpr int kCayleyRetries = 64;

}  // namespace detail

/// Seeded instance generator. Both modes produce data that is exact over the
/// polynomial ring (every product has degree below the working precision), so
/// the instances are honest lattices over the local ring and not only modulo s^N.
///
/// mu-param: standard space, w1 = span(e) in a random basis, w2 the graph of a
/// skew Phi from U1 = span(e_{<=q}, f_{>q}) to U2 = span(f_{<=q}, e_{>q}) with
/// Phi = [[0,0],[0,A]] + s Phi', in a random basis; planted mu = Phi'_{<=q,<=q}.
///
/// cayley: random constant Cayley isometry T0 and unipotent Cayley isometries U
/// with nilpotent generators; w1 = span(e) T0, w2 = span(e_{<=q}, f_{>q}) U T0;
/// then a coordinate change P = P0 (I + s E) with E^2 = 0 moves the Gram matrix
/// away from the standard form.
template <Field K>
IsotropicInstance<K> random_isotropic_pair(const K& field, std::size_t r, std::size_t precision, std::uint64_t seed,
                                           GeneratorMode mode, const GeneratorOptions& options = {}) {
  if (r == 0) throw UsageError("r must be positive");
  if (precision == 0) throw UsageError("precision must be positive");
  Rng rng(seed);
  const std::size_t n = 2 * r;
  const std::size_t q = options.q ? *options.q : static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(r)));
  if (q > r) throw UsageError("q must not exceed r");
  const auto standard = BilinearSpace<K>::standard(field, r, precision);
  const auto& g = standard.gram();

  // u1[i] and its dual u2[i] as coordinate indices
  std::vector<std::size_t> u1(r), u2(r);
  for (std::size_t i = 0; i < r; ++i) {
    u1[i] = i < q ? i : r + i;
    u2[i] = i < q ? r + i : i;
  }
  Matrix<K> e_rows(field, r, n);
  for (std::size_t i = 0; i < r; ++i) e_rows(i, i) = field.one();

  if (mode == GeneratorMode::mu_param) {
    BkMatrix<K> phi(field, r, r, precision);
    if (!options.zero_mu) {
      if (r - q >= 2) phi.layer(0).set_block(q, q, random_skew(field, r - q, static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>((r - q) / 2))), rng));
      if (precision > 1) {
        const auto higher = detail::random_skew_series(field, r, precision - 1, rng);
        for (std::size_t t = 0; t + 1 < precision; ++t) phi.layer(t + 1) = higher.layer(t);
      }
    }
    BkMatrix<K> graph(field, r, n, precision);
    for (std::size_t i = 0; i < r; ++i) {
      graph.layer(0)(i, u1[i]) = field.one();
      for (std::size_t t = 0; t < precision; ++t)
        for (std::size_t j = 0; j < r; ++j) graph.layer(t)(i, u2[j]) += phi.layer(t)(i, j);
    }
    std::optional<BkMatrix<K>> planted;
    if (precision > 1) planted = phi.divided_by_s().block(0, 0, q, q);
    else planted = BkMatrix<K>(field, q, q, 0);
    IsotropicInstance<K> inst{standard,
                              IsotropicLattice<K>(detail::random_invertible(field, r, rng) * BkMatrix<K>::constant(e_rows, precision)),
                              IsotropicLattice<K>(detail::random_invertible(field, r, rng) * graph), q, std::move(planted)};
    check_lattice(inst.space, inst.w1, "w1");
    check_lattice(inst.space, inst.w2, "w2");
    return inst;
  }

  // cayley mode; gram-skew X satisfies X G + G X^T = 0, i.e. X = S G^{-1} with S skew
  const auto g_inv = inverse(g);
  std::optional<BkMatrix<K>> t0;
  for (int attempt = 0; attempt < detail::kCayleyRetries && !t0; ++attempt) {
    const auto skew = BkMatrix<K>::constant(random_skew(field, n, r, rng), precision);
    t0 = detail::cayley_transform(skew * g_inv);
  }
  if (!t0) throw InconsistencyError("no invertible Cayley generator within the retry budget");

  // degree budget: U uses at most precision - 2, the coordinate change one more
  const std::size_t budget = precision >= 2 ? precision - 1 : 0;
  const std::size_t p_degree = budget >= 2 ? 1 : 0;
  std::size_t u_degree = budget - p_degree;
  auto u = BkMatrix<K>::identity(field, n, precision);
  while (u_degree > 0) {
    // nilpotent generator s^a [[0, B], [0, 0]] or s^a [[0, 0], [C, 0]] (times G^{-1}), B, C skew
    const std::size_t a = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(u_degree)));
    u_degree -= a;
    Matrix<K> skew(field, n, n);
    const auto block = random_skew(field, r, r, rng);
    if (rng.chance(1, 2)) skew.set_block(0, 0, block);
    else skew.set_block(r, r, block);
    auto x = BkMatrix<K>::constant(skew, precision) * g_inv;
    x = x.shifted_up(a);
    const auto factor = detail::cayley_transform(x);
    if (!factor) throw InconsistencyError("nilpotent Cayley generator was not invertible");
    u = u * *factor;
  }

  BkMatrix<K> l2(field, r, n, precision);
  for (std::size_t i = 0; i < r; ++i) l2.layer(0)(i, u1[i]) = field.one();
  BkMatrix<K> w1 = BkMatrix<K>::constant(e_rows, precision) * *t0;
  BkMatrix<K> w2 = l2 * u * *t0;

  // coordinate change x -> x P, Gram G' = P^{-1} G P^{-T}
  auto p = BkMatrix<K>::constant(detail::random_invertible(field, n, rng), precision);
  if (p_degree > 0) {
    // E = c d^T with d^T c = 0, so (I + s E)^{-1} = I - s E
    auto c = Matrix<K>::random(field, n, 1, rng);
    auto d = Matrix<K>::random(field, n, 1, rng);
    const auto dc = (d.transpose() * c)(0, 0);
    if (!dc.is_zero()) {
      // project d to be orthogonal to c in the standard dot product
      const auto cc = (c.transpose() * c)(0, 0);
      if (!cc.is_zero()) d = d - c.scaled(dc / cc);
      else d = Matrix<K>(field, n, 1);
    }
    auto e_nil = BkMatrix<K>::constant(c * d.transpose(), precision).shifted_up(1);
    p = p * (BkMatrix<K>::identity(field, n, precision) + e_nil);
  }
  const auto p_inv = inverse(p);
  BilinearSpace<K> space(r, p_inv * g * p_inv.transpose());
  IsotropicInstance<K> inst{std::move(space), IsotropicLattice<K>(w1 * p), IsotropicLattice<K>(w2 * p), q, std::nullopt};
  check_lattice(inst.space, inst.w1, "w1");
  check_lattice(inst.space, inst.w2, "w2");
  return inst;
}

/// q_k predicted by the planted data of a mu-param instance; nothing for cayley instances.
template <Field K>
std::optional<std::size_t> planted_intersection_dim(const IsotropicInstance<K>& inst, std::size_t k) {
  if (!inst.planted_mu) return std::nullopt;
  return skew_intersection_dim(inst.space.field(), inst.planted_q, *inst.planted_mu, k);
}

}  // namespace isopar
