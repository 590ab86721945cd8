#include <benchmark/benchmark.h>

#include <utility>

#include "noisestab/families.hpp"
#include "noisestab/gaussian.hpp"
#include "noisestab/harmonic.hpp"
#include "noisestab/random.hpp"
#include "noisestab/stability.hpp"
#include "noisestab/verifier.hpp"

namespace {

using namespace noisestab;

void BM_FourierTransform(benchmark::State& state) {
    const auto f = families::majority(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fourier_transform(f));
}
BENCHMARK(BM_FourierTransform)->DenseRange(9, 17, 4);

// Factored tensor pass, q = 3 on a random measure.
void BM_ComponentVariances(benchmark::State& state) {
    Rng rng(7);
    auto measure = families::random_measure(3, rng);
    const auto f = families::random_unit(3, static_cast<int>(state.range(0)), rng, std::move(measure));
    for (auto _ : state) benchmark::DoNotOptimize(component_variances(f));
}
BENCHMARK(BM_ComponentVariances)->DenseRange(4, 10, 3);

void BM_EfronSteinFull(benchmark::State& state) {
    Rng rng(8);
    const auto f = families::random_unit(3, static_cast<int>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(efron_stein(f));
}
BENCHMARK(BM_EfronSteinFull)->DenseRange(4, 8, 2);

void BM_NoisyInnerProduct(benchmark::State& state) {
    const auto f = to_unit_interval(families::majority(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(noisy_inner_product(f, f, 0.5));
}
BENCHMARK(BM_NoisyInnerProduct)->DenseRange(9, 15, 2);

void BM_HalfspaceClosedForm(benchmark::State& state) {
    const HalfspaceQuery q{0.5, 0.5, 0.3};
    for (auto _ : state) benchmark::DoNotOptimize(halfspace_stability(q));
}
BENCHMARK(BM_HalfspaceClosedForm);

void BM_HalfspaceQuadrature(benchmark::State& state) {
    const HalfspaceQuery q{0.3, 0.7, 0.4};
    for (auto _ : state) benchmark::DoNotOptimize(halfspace_stability(q));
}
BENCHMARK(BM_HalfspaceQuadrature);

void BM_ParadoxEnumeration(benchmark::State& state) {
    const auto f = families::majority(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(paradox_probability_enumeration(f, f, f));
}
BENCHMARK(BM_ParadoxEnumeration)->DenseRange(3, 7, 2);

void BM_ParadoxIdentity(benchmark::State& state) {
    const auto f = families::majority(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(paradox_probability_identity(f, f, f));
}
BENCHMARK(BM_ParadoxIdentity)->DenseRange(3, 11, 4);

}  // namespace

BENCHMARK_MAIN();
