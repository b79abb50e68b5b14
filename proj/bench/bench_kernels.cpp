// Parallel kernels against their serial references.

#include <map>
#include <random>

#include <benchmark/benchmark.h>

#include "hoch/cohomology.hpp"
#include "hoch/kernels.hpp"

using namespace hoch;

namespace {

AlgebraPtr algebra() {
  static AlgebraPtr a = algebras::dual_extension(Field::prime(3), 3, -1, -1);
  return a;
}

struct Operands {
  Cochain f, g;
};

const Operands& operands(int arity) {
  static std::map<int, Operands> cache;
  auto it = cache.find(arity);
  if (it == cache.end()) {
    std::mt19937_64 rng(5);
    RandomCochainOptions opt;
    opt.density = 0.8;
    Operands o{random_cochain(algebra(), arity, -1, rng, opt), random_cochain(algebra(), arity, -1, rng, opt)};
    it = cache.emplace(arity, std::move(o)).first;
  }
  return it->second;
}

void BM_compose_parallel(benchmark::State& state) {
  const Operands& o = operands(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::compose_table(o.f, 2, o.g));
}

void BM_compose_serial(benchmark::State& state) {
  const Operands& o = operands(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::compose_direct(o.f, 2, o.g));
}

void BM_differential_parallel(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  CochainSpace src(algebra(), p, 1 - p, Complex::Normalized), tgt(algebra(), p + 1, 1 - p, Complex::Normalized);
  for (auto _ : state) benchmark::DoNotOptimize(differential_matrix(src, tgt));
}

void BM_differential_serial(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  CochainSpace src(algebra(), p, 1 - p, Complex::Normalized), tgt(algebra(), p + 1, 1 - p, Complex::Normalized);
  for (auto _ : state) benchmark::DoNotOptimize(reference::differential_matrix_serial(src, tgt));
}

}  // namespace

BENCHMARK(BM_compose_parallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compose_serial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_differential_parallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_differential_serial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
