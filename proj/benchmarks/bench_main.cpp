#include <benchmark/benchmark.h>

#include "galscaf/constructions.hpp"
#include "galscaf/scaffold.hpp"

using namespace galscaf;

namespace {

TowerSpec ref1() {
    const FqField& F = FqField::get(2, 1);
    TowerSpec s;
    s.p = 2;
    s.n = 1;
    s.precision = 64;
    s.beta = LaurentSeries::parse(F, "t^-1");
    s.omegas = {LaurentSeries::one(F), LaurentSeries::parse(F, "t^-1")};
    s.epsilons = {LaurentSeries::zero(F), LaurentSeries::zero(F)};
    return s;
}

TowerSpec sample_spec(int p, int n) {
    Rng rng(static_cast<std::uint64_t>(100 * p + n));
    return random_spec(rng, p, n);
}

void BM_SeriesMultiply(benchmark::State& state) {
    const FqField& F = FqField::get(3, 2);
    Rng rng(1);
    const auto a = random_series(rng, F, -5, state.range(0));
    const auto b = random_series(rng, F, -7, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeriesMultiply)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_SeriesInverse(benchmark::State& state) {
    const FqField& F = FqField::get(2, 1);
    Rng rng(2);
    const auto a = random_series(rng, F, -3, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(LaurentSeries::one(F).divide(a, state.range(0)));
}
BENCHMARK(BM_SeriesInverse)->RangeMultiplier(2)->Range(16, 256);

void BM_ScaffoldBuild(benchmark::State& state) {
    const TowerSpec spec = sample_spec(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(Scaffold::build(spec));
}
BENCHMARK(BM_ScaffoldBuild)->Args({2, 1})->Args({2, 2})->Args({3, 1})->Unit(benchmark::kMillisecond);

void BM_Norm(benchmark::State& state) {
    const Scaffold s = Scaffold::build(sample_spec(static_cast<int>(state.range(0)), static_cast<int>(state.range(1))));
    Rng rng(3);
    const auto rho = random_element_of_valuation(s, s.breaks.b_m, rng);
    for (auto _ : state) benchmark::DoNotOptimize(s.oracle.valuation(rho));
}
BENCHMARK(BM_Norm)->Args({2, 1})->Args({2, 2})->Args({3, 1})->Unit(benchmark::kMillisecond);

void BM_VerifyRef1(benchmark::State& state) {
    const Scaffold s = Scaffold::build(ref1());
    Rng rng(4);
    const auto rho = random_element_of_valuation(s, 5, rng);
    for (auto _ : state) benchmark::DoNotOptimize(verify_theorem(s, rho));
}
BENCHMARK(BM_VerifyRef1)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
    const Scaffold s = Scaffold::build(sample_spec(static_cast<int>(state.range(0)), static_cast<int>(state.range(1))));
    Rng rng(5);
    const auto rho = random_element_of_valuation(s, s.breaks.b_m, rng);
    for (auto _ : state) benchmark::DoNotOptimize(verify_theorem(s, rho));
}
BENCHMARK(BM_Verify)->Args({2, 2})->Args({3, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
