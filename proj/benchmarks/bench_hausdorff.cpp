#include <benchmark/benchmark.h>

#include <random>

#include "ghm/hausdorff.hpp"

namespace {

ghm::point_cloud random_cloud(std::size_t n, std::size_t dim, std::uint64_t seed, double shift) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(n * dim);
    for (auto& v : c) v = u(rng) + shift;
    return ghm::point_cloud(std::move(c), dim, ghm::chart::ambient);
}

void BM_hausdorff_naive(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_cloud(n, 6, 1, 0.0), b = random_cloud(n, 6, 2, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(ghm::hausdorff_naive(a, b).distance);
    state.SetComplexityN(state.range(0));
}

void BM_hausdorff_earlybreak(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_cloud(n, 6, 1, 0.0), b = random_cloud(n, 6, 2, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(ghm::hausdorff_earlybreak(a, b, 7).distance);
    state.SetComplexityN(state.range(0));
}

void BM_hausdorff_tree(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_cloud(n, 6, 1, 0.0), b = random_cloud(n, 6, 2, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(ghm::hausdorff_accelerated(a, b, 1).distance);
    state.SetComplexityN(state.range(0));
}

void BM_kd_tree_build(benchmark::State& state) {
    const auto a = random_cloud(static_cast<std::size_t>(state.range(0)), 6, 3, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(ghm::build_nn_index(a).size());
}

}  // namespace

BENCHMARK(BM_hausdorff_naive)->RangeMultiplier(4)->Range(256, 4096)->Complexity();
BENCHMARK(BM_hausdorff_earlybreak)->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK(BM_hausdorff_tree)->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK(BM_kd_tree_build)->Arg(10000);
