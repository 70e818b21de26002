#include <benchmark/benchmark.h>

#include "haarmod/counting.hpp"
#include "haarmod/sampling.hpp"

using namespace haarmod;

namespace {

void BM_DeterminantBerkowitz(benchmark::State& state) {
    auto ring = make_zm(12);
    const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
    RngStream rng(3);
    Matrix m = sample_uniform_matrix(ring, n, n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(determinant(m));
    }
}
BENCHMARK(BM_DeterminantBerkowitz)->Arg(4)->Arg(8)->Arg(16);

void BM_IsInvertibleResidue(benchmark::State& state) {
    auto ring = make_zm(12);
    const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
    RngStream rng(3);
    Matrix m = sample_gl_zm(ring, n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_invertible(m));
    }
}
BENCHMARK(BM_IsInvertibleResidue)->Arg(4)->Arg(8)->Arg(16);

void BM_EnumerateGl(benchmark::State& state) {
    auto ring = make_zm(4);
    for (auto _ : state) {
        std::uint64_t count = 0;
        for_each_gl(ring, 2, [&](const Matrix&) { ++count; });
        benchmark::DoNotOptimize(count);
    }
    state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_EnumerateGl);

void BM_ExactCornerDist(benchmark::State& state) {
    auto ring = make_zm(6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_corner_dist(ring, 2, 1, DistMethod::Enumerate));
    }
}
BENCHMARK(BM_ExactCornerDist);

}  // namespace
