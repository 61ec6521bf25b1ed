#include <benchmark/benchmark.h>

#include <random>

#include "orlicz/adjoint.hpp"
#include "orlicz/compop.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/verify.hpp"

using namespace orlicz;

namespace {

Instance sized(int atoms) {
  std::mt19937_64 rng(42);
  return random_instance(rng, atoms, atoms);
}

void BM_Luxemburg(benchmark::State& state) {
  const Instance in = sized(static_cast<int>(state.range(0)));
  const auto X = in.space();
  const auto f = SimpleFunction::of(in.f);
  const auto phi = YoungFunction::exp_minus_one();
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(phi, X, f).value);
}
BENCHMARK(BM_Luxemburg)->Arg(8)->Arg(64)->Arg(512);

void BM_OrliczNorm(benchmark::State& state) {
  const Instance in = sized(static_cast<int>(state.range(0)));
  const auto X = in.space();
  const auto f = SimpleFunction::of(in.f);
  const auto phi = YoungFunction::power_abs(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(orlicz_norm(phi, X, f).value);
}
BENCHMARK(BM_OrliczNorm)->Arg(8)->Arg(64)->Arg(512);

void BM_RadonNikodym(benchmark::State& state) {
  const Instance in = sized(static_cast<int>(state.range(0)));
  const Transformation T(in.space(), in.targets);
  for (auto _ : state) benchmark::DoNotOptimize(radon_nikodym(T));
}
BENCHMARK(BM_RadonNikodym)->Arg(64)->Arg(4096);

void BM_ConditionalExpectation(benchmark::State& state) {
  const Instance in = sized(static_cast<int>(state.range(0)));
  const auto X = in.space();
  const Partition P = fiber_partition(Transformation(X, in.targets));
  const auto f = SimpleFunction::of(in.f);
  for (auto _ : state) benchmark::DoNotOptimize(conditional_expectation(X, f, P));
}
BENCHMARK(BM_ConditionalExpectation)->Arg(64)->Arg(4096);

void BM_DualityCheck(benchmark::State& state) {
  const Instance in = sized(static_cast<int>(state.range(0)));
  const Transformation T(in.space(), in.targets);
  const auto f = SimpleFunction::of(in.f), g = SimpleFunction::of(in.g);
  const auto phi = YoungFunction::power_abs(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(duality_pairing_check(phi, T, f, g).residual);
}
BENCHMARK(BM_DualityCheck)->Arg(16)->Arg(256);

void BM_VerifySuite(benchmark::State& state) {
  SuiteOptions opts;
  opts.count = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_suite(opts).passed());
}
BENCHMARK(BM_VerifySuite)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
