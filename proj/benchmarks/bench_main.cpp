#include <benchmark/benchmark.h>

#include "isopar/torsion.hpp"

namespace {

using namespace isopar;

void BM_GaussRank(benchmark::State& state) {
  const PrimeField f(32003);
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = Matrix<PrimeField>::random(f, n, n / 2, rng) * Matrix<PrimeField>::random(f, n / 2, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_GaussRank)->Arg(16)->Arg(48)->Arg(96);

void BM_BareissRankQ(benchmark::State& state) {
  const RationalField q;
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = Matrix<RationalField>::random(q, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_BareissRankQ)->Arg(8)->Arg(16)->Arg(24);

void BM_CheckLemma21(benchmark::State& state) {
  const PrimeField f(32003);
  Rng rng(3);
  const auto q = static_cast<std::size_t>(state.range(0));
  const auto fam = random_skew_family(f, q, 6, rng);
  for (auto _ : state) benchmark::DoNotOptimize(check_lemma21(fam, 6));
}
BENCHMARK(BM_CheckLemma21)->Arg(2)->Arg(4)->Arg(8);

void BM_CheckTheorem(benchmark::State& state) {
  const PrimeField f(32003);
  const auto r = static_cast<std::size_t>(state.range(0));
  const auto mode = state.range(1) ? GeneratorMode::cayley : GeneratorMode::mu_param;
  const auto inst = random_isotropic_pair(f, r, 6, 4, mode);
  for (auto _ : state) benchmark::DoNotOptimize(check_theorem(inst.space, inst.w1, inst.w2, 6));
}
BENCHMARK(BM_CheckTheorem)->Args({2, 0})->Args({6, 0})->Args({2, 1})->Args({6, 1});

void BM_SnfModelComplex(benchmark::State& state) {
  const PrimeField f(32003);
  const auto r = static_cast<std::size_t>(state.range(0));
  const auto inst = random_isotropic_pair(f, r, 6, 5, GeneratorMode::cayley);
  const auto c = model_complex(inst.space, inst.w1, inst.w2);
  for (auto _ : state) benchmark::DoNotOptimize(snf_exponents(c.d));
}
BENCHMARK(BM_SnfModelComplex)->Arg(2)->Arg(4)->Arg(6);

void BM_DeterminantalOracle(benchmark::State& state) {
  const PrimeField f(32003);
  const auto r = static_cast<std::size_t>(state.range(0));
  const auto inst = random_isotropic_pair(f, r, 6, 6, GeneratorMode::cayley);
  const auto c = model_complex(inst.space, inst.w1, inst.w2);
  for (auto _ : state) benchmark::DoNotOptimize(determinantal_divisor_valuations(c.d, 7));
}
BENCHMARK(BM_DeterminantalOracle)->Arg(2)->Arg(4)->Arg(6);

void BM_BaseChange(benchmark::State& state) {
  const PrimeField f(32003);
  Rng rng(8);
  const auto c = random_two_term_complex(f, 6, 6, 4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(check_base_change(c, 5));
}
BENCHMARK(BM_BaseChange);

}  // namespace

BENCHMARK_MAIN();
