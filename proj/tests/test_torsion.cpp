#include <gtest/gtest.h>

#include "oracles.hpp"

namespace isopar {
namespace {

using testing::bk_from_polys;
using testing::determinantal_valuations_leibniz;
using testing::exponents_from_determinantal;
using testing::image_dim_by_enumeration;
using testing::kernel_dim_by_enumeration;
using testing::poly_matrix;

TEST(Profile, MakeProfileSortsAndDropsZeros) {
  const auto p = make_profile(1, {3, 0, 1, 2});
  EXPECT_EQ(p.free_rank, 1u);
  EXPECT_EQ(p.exponents, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_TRUE(make_profile(0, {0, 0}).is_zero());
}

TEST(Profile, MProfileExamples) {
  EXPECT_TRUE(m_profile(make_profile(2, {})).empty());
  EXPECT_EQ(m_profile(make_profile(0, {1, 1})), (std::vector<std::size_t>{2}));
  EXPECT_EQ(m_profile(make_profile(0, {1, 3, 3})), (std::vector<std::size_t>{3, 2, 2}));
}

TEST(Profile, SplitCheckExamples) {
  EXPECT_TRUE(split_check(make_profile(0, {})));
  EXPECT_TRUE(split_check(make_profile(3, {2, 2})));
  EXPECT_TRUE(split_check(make_profile(0, {1, 1, 4, 4})));
  EXPECT_FALSE(split_check(make_profile(0, {2})));
  EXPECT_FALSE(split_check(make_profile(0, {1, 2})));
  EXPECT_FALSE(split_check(make_profile(0, {1, 1, 2})));
}

TEST(Profile, SplitCheckMatchesPairingOnRandomProfiles) {
  Rng rng(1);
  for (int t = 0; t < 2000; ++t) {
    std::vector<std::size_t> e(rng.below(7));
    for (auto& x : e) x = 1 + rng.below(4);
    // bias towards split profiles
    if (rng.chance(1, 2)) {
      const auto half = e;
      e.insert(e.end(), half.begin(), half.end());
    }
    const auto p = make_profile(rng.below(3), e);
    EXPECT_EQ(split_check(p), exponents_pair_up(p));
  }
}

TEST(Profile, TensorDimExamples) {
  const auto p = make_profile(2, {1, 3});
  EXPECT_EQ(tensor_dim(p, 1), 4u);
  EXPECT_EQ(tensor_dim(p, 2), 7u);
  EXPECT_EQ(tensor_dim(p, 5), 14u);
}

TEST(ProfileFromDims, Examples) {
  EXPECT_EQ(profile_from_dims({2, 4, 6}, 2), make_profile(0, {}));  // torsion part only
  // h = k q0 + sum_{j <= k} m_j with q0 = 0, m = (2, 1, 1)
  EXPECT_EQ(profile_from_dims({2, 3, 4}, 0), make_profile(0, {1, 3}));
  EXPECT_EQ(profile_from_dims({2, 2}, 0), make_profile(0, {1, 1}));
  EXPECT_THROW(profile_from_dims({2, 5}, 1), InconsistentSequence);
  EXPECT_THROW(profile_from_dims({1, 0}, 0), InconsistentSequence);
}

TEST(ProfileFromDims, InvertsTensorDims) {
  Rng rng(2);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::size_t> e(rng.below(6));
    for (auto& x : e) x = 1 + rng.below(5);
    const auto p = make_profile(rng.below(3), e);
    std::vector<long> h;
    for (std::size_t k = 1; k <= 6; ++k) h.push_back(static_cast<long>(tensor_dim(p, k)));
    EXPECT_EQ(profile_from_dims(h, static_cast<long>(p.free_rank)), make_profile(0, p.exponents));
  }
}

TEST(SnfExponents, Examples) {
  const PrimeField f(32003);
  EXPECT_EQ(snf_exponents(poly_matrix(f, {{{0, 1}, {}}, {{}, {0, 1}}})), make_profile(0, {1, 1}));
  const auto jordan = poly_matrix(f, {{{0, 1}, {1}}, {{}, {0, 1}}});
  EXPECT_EQ(snf_exponents(jordan), make_profile(0, {2}));
  EXPECT_EQ(determinantal_valuations_leibniz(jordan), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(snf_exponents(PolyMatrix<PrimeField>(f, 2, 3)), make_profile(2, {}));
  EXPECT_EQ(snf_exponents(poly_matrix(f, {{{1, 1}}})), make_profile(0, {}));  // 1 + s is a unit
  EXPECT_EQ(snf_exponents(poly_matrix(f, {{{0, 0, 1}, {0, 1}}})), make_profile(0, {1}));
}

TEST(SnfExponents, ExplicitCapTooSmallThrows) {
  const PrimeField f(7);
  const auto d = poly_matrix(f, {{{0, 0, 0, 1}}});
  EXPECT_THROW(snf_exponents(d, 2), PrecisionExhausted);
  EXPECT_EQ(snf_exponents(d, 4), make_profile(0, {3}));
  EXPECT_EQ(snf_exponents(d), make_profile(0, {3}));
}

TEST(RankOverFractionField, Examples) {
  const RationalField q;
  EXPECT_EQ(rank_over_fraction_field(poly_matrix(q, {{{0, 1}, {1}}, {{0, 0, 1}, {0, 1}}})), 1u);
  EXPECT_EQ(rank_over_fraction_field(poly_matrix(q, {{{0, 1}, {1}}, {{}, {0, 1}}})), 2u);
  EXPECT_EQ(rank_over_fraction_field(PolyMatrix<RationalField>(q, 3, 2)), 0u);
}

TEST(PolyDeterminant, MatchesLeibniz) {
  const PrimeField f(32003);
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.below(4);
    PolyMatrix<PrimeField> m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Fp> c(rng.below(4), f.zero());
        for (auto& x : c) x = rng.chance(1, 3) ? f.zero() : f.random(rng);
        m(i, j) = PolyElement<PrimeField>(f, c);
      }
    EXPECT_EQ(poly_determinant(m), testing::leibniz_det(m));
  }
}

template <Field K>
void check_random_complexes(const K& f, std::uint64_t seed, int trials, std::size_t max_rank, std::size_t max_degree) {
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto c = random_two_term_complex(f, 1, max_rank, max_degree, rng);
    const auto p = snf_exponents(c.d);
    const std::size_t generic = rank_over_fraction_field(c.d);
    EXPECT_EQ(p.free_rank, c.rank1 - generic);
    const auto leibniz = determinantal_valuations_leibniz(c.d);
    ASSERT_EQ(leibniz.size(), generic);
    EXPECT_TRUE(profile_matches_determinantal(p, c.rank1, leibniz));
    std::vector<std::size_t> torsion;
    for (auto e : exponents_from_determinantal(leibniz))
      if (e > 0) torsion.push_back(e);
    EXPECT_EQ(p.exponents, torsion);

    EXPECT_EQ(determinantal_valuations_exhaustive(c.d), leibniz);
    Rng draw(derive_seed(seed, static_cast<std::uint64_t>(t)));
    EXPECT_EQ(determinantal_valuations_compressed(c.d, generic, draw), leibniz);

    const auto rep = check_base_change(c, 5);
    EXPECT_TRUE(rep.h1_ok);
    EXPECT_TRUE(rep.h0_ok);
    EXPECT_EQ(rep.generic_rank, generic);
    if (rep.h1_vanishes) {
      for (auto x : rep.h0_discrepancy) EXPECT_EQ(x, 0);
    }
  }
}

TEST(RandomComplex, InvariantsOverF32003) { check_random_complexes(PrimeField(32003), 4, 200, 4, 3); }
TEST(RandomComplex, InvariantsOverF7) { check_random_complexes(PrimeField(7), 5, 200, 4, 3); }
TEST(RandomComplex, InvariantsOverF3) { check_random_complexes(PrimeField(3), 9, 300, 4, 3); }
TEST(RandomComplex, InvariantsOverQ) { check_random_complexes(RationalField{}, 6, 60, 3, 2); }

TEST(RandomComplex, RejectsBadRanks) {
  const PrimeField f(7);
  Rng rng(1);
  EXPECT_THROW(random_two_term_complex(f, 0, 3, 2, rng), UsageError);
  EXPECT_THROW(random_two_term_complex(f, 3, 2, 2, rng), UsageError);
}

TEST(DeterminantalOracle, ChoosesModeByMinorCount) {
  EXPECT_EQ(minor_count(2, 2), 5u);  // 4 + 1
  EXPECT_EQ(minor_count(1, 3), 3u);
  const PrimeField f(32003);
  EXPECT_TRUE(determinantal_divisor_valuations(poly_matrix(f, {{{0, 1}}}), 1).exhaustive);
  Rng rng(7);
  PolyMatrix<PrimeField> big(f, 8, 8);
  for (std::size_t i = 0; i < 8; ++i) big(i, i) = PolyElement<PrimeField>::monomial(f, f.one(), i % 3);
  const auto mixed = Matrix<PrimeField>::random(f, 8, 8, rng) * big * Matrix<PrimeField>::random(f, 8, 8, rng);
  const auto dv = determinantal_divisor_valuations(mixed, 9);
  EXPECT_FALSE(dv.exhaustive);
  // diagonal exponents 0,1,2,0,1,2,0,1 sorted: 0,0,0,1,1,1,2,2
  EXPECT_EQ(dv.valuations, (std::vector<std::size_t>{0, 0, 0, 1, 2, 3, 5, 7}));
}

TEST(CohomologyDims, MultiplicationByS) {
  const PrimeField f7(7);
  const TwoTermComplex<PrimeField> c(poly_matrix(f7, {{{0, 1}}}));
  const auto bk = c.d.truncated(3);
  const std::size_t h0 = kernel_dim_by_enumeration(bk), h1 = 3 - image_dim_by_enumeration(bk);
  EXPECT_EQ(h0, 1u);
  EXPECT_EQ(h1, 1u);
  const auto dims = cohomology_dims(c, 3);
  EXPECT_EQ(dims.h0, h0);
  EXPECT_EQ(dims.h1, h1);
  EXPECT_THROW(cohomology_dims(c, 0), UsageError);
}

TEST(CohomologyDims, ZeroAndUnitMaps) {
  const PrimeField f(32003);
  const TwoTermComplex<PrimeField> zero(PolyMatrix<PrimeField>(f, 2, 3));
  EXPECT_EQ(cohomology_dims(zero, 4).h0, 12u);
  EXPECT_EQ(cohomology_dims(zero, 4).h1, 8u);
  const TwoTermComplex<PrimeField> unit(poly_matrix(f, {{{1}}}));
  EXPECT_EQ(cohomology_dims(unit, 4).h0, 0u);
  EXPECT_EQ(cohomology_dims(unit, 4).h1, 0u);
}

TEST(CohomologyDims, MatchEnumerationOnSmallComplexes) {
  const PrimeField f3(3);
  Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    const auto c = random_two_term_complex(f3, 1, 2, 2, rng);
    for (std::size_t k = 1; k * c.rank0 <= 6 && k <= 3; ++k) {
      const auto bk = c.d.truncated(k);
      const auto dims = cohomology_dims(c, k);
      EXPECT_EQ(dims.h0, kernel_dim_by_enumeration(bk));
      EXPECT_EQ(dims.h1, k * c.rank1 - image_dim_by_enumeration(bk));
    }
  }
}

TEST(CheckBaseChange, MultiplicationByS) {
  const PrimeField f(32003);
  const auto rep = check_base_change(TwoTermComplex<PrimeField>(poly_matrix(f, {{{0, 1}}})), 2);
  EXPECT_EQ(rep.h1_profile, make_profile(0, {1}));
  EXPECT_EQ(rep.generic_rank, 1u);
  EXPECT_EQ(rep.predicted_h1, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(rep.h1, rep.predicted_h1);
  EXPECT_EQ(rep.h0, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(rep.h0_discrepancy, (std::vector<long>{1, 1}));
  EXPECT_TRUE(rep.h1_ok);
  EXPECT_FALSE(rep.h1_vanishes);
  EXPECT_TRUE(rep.h0_ok);
}

TEST(CheckBaseChange, SurjectiveMapHasFlatKernel) {
  const PrimeField f(32003);
  // (1, s): H^1 = 0 and H^0 is free of rank 1
  const auto rep = check_base_change(TwoTermComplex<PrimeField>(poly_matrix(f, {{{1}, {0, 1}}})), 4);
  EXPECT_TRUE(rep.h1_vanishes);
  EXPECT_EQ(rep.h0, (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_TRUE(rep.h0_ok);
}

TEST(ModelComplex, EqualLatticesGiveFreeCokernel) {
  const PrimeField f(32003);
  const auto space = BilinearSpace<PrimeField>::standard(f, 3, 4);
  Matrix<PrimeField> e(f, 3, 6);
  for (std::size_t i = 0; i < 3; ++i) e(i, i) = f.one();
  const IsotropicLattice<PrimeField> w(BkMatrix<PrimeField>::constant(e, 4));
  const auto p = snf_exponents(model_complex(space, w, w).d);
  EXPECT_EQ(p, make_profile(3, {}));
}

template <Field K>
void check_mu_instance_model(const K& f) {
  const auto space = BilinearSpace<K>::standard(f, 2, 3);
  const IsotropicLattice<K> w1(bk_from_polys(f, 3, {{{1}, {0}, {0}, {0}}, {{0}, {1}, {0}, {0}}}));
  const IsotropicLattice<K> w2(bk_from_polys(f, 3, {{{1}, {0}, {0}, {0, 1}}, {{0}, {1}, {0, -1}, {0}}}));
  const auto c = model_complex(space, w1, w2);
  const auto p = snf_exponents(c.d);
  EXPECT_EQ(p, make_profile(0, {1, 1}));
  EXPECT_TRUE(split_check(p));
  EXPECT_TRUE(profile_matches_determinantal(p, c.rank1, determinantal_valuations_leibniz(c.d)));
  for (std::size_t k = 1; k <= 3; ++k) EXPECT_EQ(cohomology_dims(c, k).h1, 2u);
}

TEST(ModelComplex, RankTwoMuInstanceOverQ) { check_mu_instance_model(RationalField{}); }
TEST(ModelComplex, RankTwoMuInstanceOverF7) { check_mu_instance_model(PrimeField(7)); }

TEST(ModelComplex, RandomInstancesSplitAndMatchIntersections) {
  const PrimeField f(32003);
  for (auto mode : {GeneratorMode::mu_param, GeneratorMode::cayley})
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const std::size_t r = 1 + seed % 4;
      const auto inst = random_isotropic_pair(f, r, 4, seed, mode);
      const auto c = model_complex(inst.space, inst.w1, inst.w2);
      const auto p = snf_exponents(c.d);
      EXPECT_TRUE(split_check(p));
      const auto dv = determinantal_divisor_valuations(c.d, seed);
      EXPECT_TRUE(profile_matches_determinantal(p, c.rank1, dv.valuations));
      for (std::size_t k = 1; k <= 4; ++k) {
        const auto dims = cohomology_dims(c, k);
        const auto q = intersection_dim_oracle(inst.space, inst.w1, inst.w2, k);
        EXPECT_EQ(dims.h0, q);
        EXPECT_EQ(dims.h1, q);
        EXPECT_EQ(tensor_dim(p, k), q);
      }
    }
}

TEST(PolyIo, ParsesEntries) {
  EXPECT_EQ(parse_int_poly("0"), (std::vector<std::int64_t>{}));
  EXPECT_EQ(parse_int_poly("3"), (std::vector<std::int64_t>{3}));
  EXPECT_EQ(parse_int_poly("-s"), (std::vector<std::int64_t>{0, -1}));
  EXPECT_EQ(parse_int_poly("1+s^2"), (std::vector<std::int64_t>{1, 0, 1}));
  EXPECT_EQ(parse_int_poly("2*s^4-s"), (std::vector<std::int64_t>{0, -1, 0, 0, 2}));
  EXPECT_EQ(parse_int_poly("-3s+3s"), (std::vector<std::int64_t>{}));
  EXPECT_EQ(parse_int_poly("s+s"), (std::vector<std::int64_t>{0, 2}));
}

TEST(PolyIo, RejectsMalformedEntries) {
  for (const char* bad : {"", "+", "s^", "s^x", "2*", "*s", "1++s", "x", "s^5000", "99999999999999999999"})
    EXPECT_THROW(parse_int_poly(bad), ParseError) << bad;
}

TEST(PolyIo, ParsesMatrixWithCommentsAndSeparators) {
  const auto m = parse_int_poly_matrix("# jordan block\n s, 1\n\n0   s\n");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0][0], (std::vector<std::int64_t>{0, 1}));
  EXPECT_EQ(m[0][1], (std::vector<std::int64_t>{1}));
  EXPECT_TRUE(m[1][0].empty());
  const PrimeField f(32003);
  EXPECT_EQ(snf_exponents(to_poly_matrix(f, m)), make_profile(0, {2}));
}

TEST(PolyIo, RejectsRaggedAndEmptyInput) {
  EXPECT_THROW(parse_int_poly_matrix("1 2\n3\n"), ParseError);
  EXPECT_THROW(parse_int_poly_matrix("# nothing\n\n"), ParseError);
  try {
    parse_int_poly_matrix("1 2\ns^ 3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

}  // namespace
}  // namespace isopar
