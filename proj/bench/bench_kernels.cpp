#include <benchmark/benchmark.h>

#include <random>

#include "skewrate/germ.hpp"
#include "skewrate/kernels.hpp"
#include "skewrate/verify.hpp"

using namespace skewrate;

namespace {

SparsePoly2 dense(std::uint64_t degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::vector<Term> terms;
  for (std::uint64_t i = 0; i <= degree; ++i)
    for (std::uint64_t j = 0; i + j <= degree; ++j) {
      const int c = coeff(rng);
      if (c != 0) terms.push_back({{i, j}, Rational(c, 7)});
    }
  return SparsePoly2::from_terms(std::move(terms));
}

void BM_MulSerial(benchmark::State& state) {
  const SparsePoly2 a = dense(state.range(0), 1), b = dense(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mul_serial(a, b));
}

void BM_MulParallel(benchmark::State& state) {
  const SparsePoly2 a = dense(state.range(0), 1), b = dense(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mul_parallel(a, b));
}

void BM_Iterate(benchmark::State& state) {
  const SkewGerm f(parse_poly("z^2"), parse_poly("w^3 + z*w + z^3"));
  for (auto _ : state) benchmark::DoNotOptimize(iterate_germ(f, state.range(0)));
}

void BM_VerifyG2(benchmark::State& state) {
  const SkewGerm f(parse_poly("z^2"), parse_poly("z^3*w + z*w^2"));
  VerifyOptions opt;
  opt.n_max = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_germ(f, opt));
}

}  // namespace

BENCHMARK(BM_MulSerial)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MulParallel)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Iterate)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyG2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
