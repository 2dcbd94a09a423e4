#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "fenchel/discrete.hpp"
#include "fenchel/linalg.hpp"

using namespace fenchel;

namespace {

SampledFn samples(std::size_t n) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> noise(-0.1, 0.1);
    std::vector<double> xs(n), fs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = -5.0 + 10.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        fs[i] = 0.5 * xs[i] * xs[i] + noise(gen);
    }
    return SampledFn(Grid1D(std::move(xs)), std::move(fs));
}

std::vector<double> slopes(std::size_t m) {
    std::vector<double> s(m);
    for (std::size_t k = 0; k < m; ++k) s[k] = -5.0 + 10.0 * static_cast<double>(k) / static_cast<double>(m - 1);
    return s;
}

void BM_FastConjugate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const SampledFn f = samples(n);
    const std::vector<double> s = slopes(n);
    for (auto _ : state) benchmark::DoNotOptimize(fast_conjugate_values(f, s));
    state.SetComplexityN(state.range(0));
}

void BM_BruteConjugate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const SampledFn f = samples(n);
    const std::vector<double> s = slopes(n);
    for (auto _ : state) benchmark::DoNotOptimize(brute_conjugate_values(f, s));
    state.SetComplexityN(state.range(0));
}

void BM_Eigendecompose(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = u(gen);
    const SymMatrix s = SymMatrix::symmetrize(m);
    for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(s));
}

} // namespace

BENCHMARK(BM_FastConjugate)->RangeMultiplier(4)->Range(64, 65536)->Complexity();
BENCHMARK(BM_BruteConjugate)->RangeMultiplier(4)->Range(64, 4096)->Complexity();
BENCHMARK(BM_Eigendecompose)->DenseRange(2, 16, 2);
BENCHMARK_MAIN();
