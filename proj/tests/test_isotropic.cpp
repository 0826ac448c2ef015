#include <gtest/gtest.h>

#include "oracles.hpp"

namespace isopar {
namespace {

using testing::bk_from_polys;
using testing::intersection_dim_grassmann;

/// Standard hyperbolic space of half-rank 2, w1 = span(e1, e2),
/// w2 = span(e1 + s f2, e2 - s f1).
template <Field K>
struct MuInstance {
  BilinearSpace<K> space;
  IsotropicLattice<K> w1, w2;
};

template <Field K>
MuInstance<K> mu_instance(const K& f, std::size_t precision) {
  auto space = BilinearSpace<K>::standard(f, 2, precision);
  auto w1 = bk_from_polys(f, precision, {{{1}, {0}, {0}, {0}}, {{0}, {1}, {0}, {0}}});
  auto w2 = bk_from_polys(f, precision, {{{1}, {0}, {0}, {0, 1}}, {{0}, {1}, {0, -1}, {0}}});
  return {std::move(space), IsotropicLattice<K>(std::move(w1)), IsotropicLattice<K>(std::move(w2))};
}

template <Field K>
IsotropicLattice<K> span_e(const K& f, std::size_t r, std::size_t precision) {
  Matrix<K> m(f, r, 2 * r);
  for (std::size_t i = 0; i < r; ++i) m(i, i) = f.one();
  return IsotropicLattice<K>(BkMatrix<K>::constant(m, precision));
}

template <Field K>
IsotropicLattice<K> span_f(const K& f, std::size_t r, std::size_t precision) {
  Matrix<K> m(f, r, 2 * r);
  for (std::size_t i = 0; i < r; ++i) m(i, r + i) = f.one();
  return IsotropicLattice<K>(BkMatrix<K>::constant(m, precision));
}

/// Flattened submodule W (x) B_k: the K-span of s^t times each basis row.
template <Field K>
Matrix<K> flattened_span(const IsotropicLattice<K>& w, std::size_t k) {
  return flatten_row_span(w.basis().truncated(k));
}

TEST(BilinearSpace, Validation) {
  const PrimeField f(7);
  EXPECT_THROW(BilinearSpace<PrimeField>(0, BkMatrix<PrimeField>(f, 0, 0, 1)), UsageError);
  EXPECT_THROW(BilinearSpace<PrimeField>(1, BkMatrix<PrimeField>(f, 2, 2, 1)), UsageError);  // degenerate
  EXPECT_THROW(BilinearSpace<PrimeField>(1, bk_from_polys(f, 1, {{{0}, {1}}, {{2}, {0}}})), UsageError);
  EXPECT_NO_THROW(BilinearSpace<PrimeField>::standard(f, 3, 2));
}

TEST(HyperbolicComplete, StandardFrameIsAlreadyHyperbolic) {
  const PrimeField f(32003);
  const auto space = BilinearSpace<PrimeField>::standard(f, 3, 4);
  const auto frame = hyperbolic_complete(space, span_e(f, 3, 4));
  EXPECT_EQ(frame.f, span_f(f, 3, 4).basis());
  EXPECT_TRUE(frame_is_hyperbolic(space, frame));
}

TEST(HyperbolicComplete, RankOneNonStandardGram) {
  const RationalField q;
  const BilinearSpace<RationalField> space(1, bk_from_polys(q, 1, {{{0}, {1}}, {{1}, {1}}}));
  const IsotropicLattice<RationalField> e(bk_from_polys(q, 1, {{{1}, {0}}}));
  const auto frame = hyperbolic_complete(space, e);
  // oracle: substitute f = (-1/2, 1) into Q(x, y) = x1 y2 + x2 y1 + x2 y2
  const Rational f1(-1, 2), f2(1, 1);
  auto qform = [](Rational x1, Rational x2, Rational y1, Rational y2) { return x1 * y2 + x2 * y1 + x2 * y2; };
  EXPECT_EQ(qform(f1, f2, f1, f2), Rational(0, 1));
  EXPECT_EQ(qform(f1, f2, Rational(1, 1), Rational(0, 1)), Rational(1, 1));
  EXPECT_EQ(frame.f.layer(0)(0, 0), f1);
  EXPECT_EQ(frame.f.layer(0)(0, 1), f2);
  EXPECT_TRUE(frame_is_hyperbolic(space, frame));
}

TEST(HyperbolicComplete, NonIsotropicInputThrows) {
  const PrimeField f(7);
  const BilinearSpace<PrimeField> space = BilinearSpace<PrimeField>::standard(f, 1, 2);
  const IsotropicLattice<PrimeField> bad(bk_from_polys(f, 2, {{{1}, {1}}}));
  EXPECT_THROW(hyperbolic_complete(space, bad), InvalidLattice);
  const IsotropicLattice<PrimeField> not_summand(bk_from_polys(f, 2, {{{0, 1}, {0}}}));
  EXPECT_THROW(hyperbolic_complete(space, not_summand), InvalidLattice);
}

TEST(AlignAndExtractMu, EqualLattices) {
  const PrimeField f(32003);
  const auto space = BilinearSpace<PrimeField>::standard(f, 3, 4);
  const auto mu = align_and_extract_mu(space, span_e(f, 3, 4), span_e(f, 3, 4));
  EXPECT_EQ(mu.q, 3u);
  EXPECT_TRUE(mu.mu.is_zero());
  EXPECT_EQ(mu.lambda.cols(), 0u);
}

TEST(AlignAndExtractMu, RankTwoMuInstance) {
  // oracle: with v1 = e1 + s f2 and v2 = e2 - s f1 already normalized, z1 = f2, z2 = -f1
  const RationalField q;
  const auto inst = mu_instance(q, 4);
  const auto mu = align_and_extract_mu(inst.space, inst.w1, inst.w2);
  EXPECT_EQ(mu.q, 2u);
  EXPECT_EQ(mu.lambda.cols(), 0u);
  EXPECT_EQ(mu.mu.layer(0), Matrix<RationalField>::from_ints(q, {{0, 1}, {-1, 0}}));
  for (std::size_t t = 1; t < mu.mu.precision(); ++t) EXPECT_TRUE(mu.mu.layer(t).is_zero());
}

TEST(AlignAndExtractMu, TransverseReductions) {
  const PrimeField f(32003);
  const auto space = BilinearSpace<PrimeField>::standard(f, 3, 3);
  const auto mu = align_and_extract_mu(space, span_e(f, 3, 3), span_f(f, 3, 3));
  EXPECT_EQ(mu.q, 0u);
  EXPECT_EQ(mu.mu.rows(), 0u);
}

TEST(IntersectionDimOracle, EqualLattices) {
  const PrimeField f(32003);
  const auto space = BilinearSpace<PrimeField>::standard(f, 3, 4);
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(intersection_dim_oracle(space, span_e(f, 3, 4), span_e(f, 3, 4), k), 3 * k);
  EXPECT_THROW(intersection_dim_oracle(space, span_e(f, 3, 4), span_e(f, 3, 4), 5), PrecisionExhausted);
}

TEST(IntersectionDimOracle, RankTwoMuInstanceAtK3) {
  const PrimeField f(32003);
  const auto inst = mu_instance(f, 3);
  const std::size_t oracle = intersection_dim_grassmann(flattened_span(inst.w1, 3), flattened_span(inst.w2, 3));
  EXPECT_EQ(oracle, 2u);
  EXPECT_EQ(intersection_dim_oracle(inst.space, inst.w1, inst.w2, 3), oracle);
}

TEST(IntersectionDimOracle, TransverseAtK2) {
  const PrimeField f(32003);
  const auto space = BilinearSpace<PrimeField>::standard(f, 2, 2);
  const std::size_t oracle = intersection_dim_grassmann(flattened_span(span_e(f, 2, 2), 2), flattened_span(span_f(f, 2, 2), 2));
  EXPECT_EQ(oracle, 0u);
  EXPECT_EQ(intersection_dim_oracle(space, span_e(f, 2, 2), span_f(f, 2, 2), 2), oracle);
}

TEST(IntersectionDimStructural, Examples) {
  const PrimeField f(32003);
  const auto space = BilinearSpace<PrimeField>::standard(f, 3, 5);
  const auto equal = align_and_extract_mu(space, span_e(f, 3, 5), span_e(f, 3, 5));
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_EQ(intersection_dim_structural(equal, k), 3 * k);
  const auto inst = mu_instance(f, 5);
  const auto mu = align_and_extract_mu(inst.space, inst.w1, inst.w2);
  for (std::size_t k = 1; k <= 5; ++k) {
    EXPECT_EQ(intersection_dim_structural(mu, k), 2u);
    EXPECT_EQ(intersection_dim_oracle(inst.space, inst.w1, inst.w2, k), 2u);
  }
  const auto transverse = align_and_extract_mu(space, span_e(f, 3, 5), span_f(f, 3, 5));
  EXPECT_EQ(intersection_dim_structural(transverse, 4), 0u);
}

TEST(CheckTheorem, EqualLattices) {
  const PrimeField f(32003);
  const auto space = BilinearSpace<PrimeField>::standard(f, 2, 4);
  const auto rep = check_theorem(space, span_e(f, 2, 4), span_e(f, 2, 4), 4);
  EXPECT_EQ(rep.d, (std::vector<long>{0, 0, 0, 0}));
}

template <Field K>
void check_mu_instance_theorem(const K& f) {
  const auto inst = mu_instance(f, 3);
  const auto rep = check_theorem(inst.space, inst.w1, inst.w2, 3);
  EXPECT_EQ(rep.q, (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(rep.d, (std::vector<long>{0, 2, 4}));
  EXPECT_TRUE(rep.even_ok && rep.monotone_ok && rep.path_agreement && rep.hyperbolic_ok && rep.mu_skew_ok);
}

TEST(CheckTheorem, RankTwoMuInstanceOverQ) { check_mu_instance_theorem(RationalField{}); }
TEST(CheckTheorem, RankTwoMuInstanceOverF7) { check_mu_instance_theorem(PrimeField(7)); }
TEST(CheckTheorem, RankTwoMuInstanceOverF32003) { check_mu_instance_theorem(PrimeField(32003)); }

TEST(CheckTheorem, KMaxBeyondPrecisionThrows) {
  const PrimeField f(7);
  const auto inst = mu_instance(f, 3);
  EXPECT_THROW(check_theorem(inst.space, inst.w1, inst.w2, 4), PrecisionExhausted);
}

TEST(RandomIsotropicPair, RejectsZeroSizes) {
  const PrimeField f(7);
  EXPECT_THROW(random_isotropic_pair(f, 0, 3, 1, GeneratorMode::mu_param), UsageError);
  EXPECT_THROW(random_isotropic_pair(f, 2, 0, 1, GeneratorMode::cayley), UsageError);
}

TEST(RandomIsotropicPair, ZeroMuGivesFullReductionIntersection) {
  const PrimeField f(32003);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t r = 1 + seed % 5;
    const auto inst = random_isotropic_pair(f, r, 4, seed, GeneratorMode::mu_param, {r, true});
    const auto rep = check_theorem(inst.space, inst.w1, inst.w2, 4);
    EXPECT_EQ(rep.q.front(), r);
    EXPECT_EQ(rep.q.back(), 4 * r);
  }
}

TEST(RandomIsotropicPair, DeterministicForFixedSeed) {
  const PrimeField f(32003);
  for (auto mode : {GeneratorMode::mu_param, GeneratorMode::cayley}) {
    const auto a = random_isotropic_pair(f, 4, 5, 99, mode);
    const auto b = random_isotropic_pair(f, 4, 5, 99, mode);
    EXPECT_EQ(a.space.gram(), b.space.gram());
    EXPECT_EQ(a.w1.basis(), b.w1.basis());
    EXPECT_EQ(a.w2.basis(), b.w2.basis());
    const auto c = random_isotropic_pair(f, 4, 5, 100, mode);
    EXPECT_FALSE(a.w2.basis() == c.w2.basis());
  }
}

TEST(GeneratorMode, NamesRoundTrip) {
  for (auto mode : {GeneratorMode::mu_param, GeneratorMode::cayley}) EXPECT_EQ(parse_generator_mode(to_string(mode)), mode);
  EXPECT_THROW(parse_generator_mode("other"), UsageError);
}

template <Field K>
void check_random_pairs(const K& f, GeneratorMode mode, std::uint64_t seed, int trials, std::size_t r_max) {
  for (int t = 0; t < trials; ++t) {
    const std::size_t r = 1 + static_cast<std::size_t>(t) % r_max;
    const auto inst = random_isotropic_pair(f, r, 5, derive_seed(seed, static_cast<std::uint64_t>(t)), mode);
    check_lattice(inst.space, inst.w1);
    check_lattice(inst.space, inst.w2);
    const auto mu = align_and_extract_mu(inst.space, inst.w1, inst.w2);
    EXPECT_EQ(mu.q, inst.planted_q);
    EXPECT_TRUE(frame_is_hyperbolic(inst.space, mu.aligned_frame));
    EXPECT_TRUE((mu.mu + mu.mu.transpose()).is_zero());
    const auto rep = check_theorem(inst.space, inst.w1, inst.w2, 5, &mu);
    EXPECT_TRUE(rep.even_ok);
    EXPECT_TRUE(rep.monotone_ok);
    EXPECT_TRUE(rep.transversal_ok);
    for (std::size_t k = 1; k <= 5; ++k) {
      const std::size_t grassmann =
          intersection_dim_grassmann(flattened_span(inst.w1, k), flattened_span(inst.w2, k));
      EXPECT_EQ(rep.q[k - 1], grassmann);
      if (auto planted = planted_intersection_dim(inst, k)) {
        EXPECT_EQ(*planted, rep.q[k - 1]);
      }
    }
    if (rep.q.front() == 0) {
      for (auto qk : rep.q) EXPECT_EQ(qk, 0u);
    }
  }
}

TEST(RandomIsotropicPair, MuParamOverF32003) { check_random_pairs(PrimeField(32003), GeneratorMode::mu_param, 1, 80, 5); }
TEST(RandomIsotropicPair, CayleyOverF32003) { check_random_pairs(PrimeField(32003), GeneratorMode::cayley, 2, 80, 5); }
TEST(RandomIsotropicPair, MuParamOverF7) { check_random_pairs(PrimeField(7), GeneratorMode::mu_param, 3, 60, 4); }
TEST(RandomIsotropicPair, CayleyOverF7) { check_random_pairs(PrimeField(7), GeneratorMode::cayley, 4, 60, 4); }
TEST(RandomIsotropicPair, MuParamOverQ) { check_random_pairs(RationalField{}, GeneratorMode::mu_param, 5, 20, 3); }
TEST(RandomIsotropicPair, CayleyOverQ) { check_random_pairs(RationalField{}, GeneratorMode::cayley, 6, 20, 3); }

TEST(RandomIsotropicPair, DataIsExactlyPolynomial) {
  // every stored product stays below s^N, so doubling the precision changes nothing
  const PrimeField f(32003);
  for (auto mode : {GeneratorMode::mu_param, GeneratorMode::cayley})
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto inst = random_isotropic_pair(f, 3, 4, seed, mode);
      const auto g = inst.space.gram().padded(8);
      const auto w1 = inst.w1.basis().padded(8), w2 = inst.w2.basis().padded(8);
      EXPECT_TRUE((w1 * g * w1.transpose()).is_zero());
      EXPECT_TRUE((w2 * g * w2.transpose()).is_zero());
    }
}

}  // namespace
}  // namespace isopar
