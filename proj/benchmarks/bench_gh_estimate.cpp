#include <benchmark/benchmark.h>

#include "ghm/gh_estimate.hpp"

namespace {

const ghm::blanusa::constants& consts() {
    static const ghm::blanusa::constants k = ghm::blanusa::compute_constants();
    return k;
}

void BM_compute_constants(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ghm::blanusa::compute_constants().c);
}

void BM_embed_cloud(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto q = ghm::sample_hyperbolic_ball(ghm::default_hyperbolic_spec(n, n));
    for (auto _ : state) benchmark::DoNotOptimize(ghm::blanusa::embed_cloud(q, consts()).size());
}

// Scores the whole candidate family for a pair against fixed clouds.
void BM_score_family(benchmark::State& state) {
    const auto pair = static_cast<ghm::gh_pair>(state.range(0));
    const auto res = static_cast<std::size_t>(state.range(1));
    auto clouds = ghm::pipeline_clouds(pair, {res, res}, consts());
    const ghm::candidate_scorer scorer(clouds[0], clouds[1]);
    ghm::candidate_grid_spec grid;
    grid.offset_steps = 20;
    const auto cands = ghm::candidates_for(pair, grid);
    for (auto _ : state) benchmark::DoNotOptimize(ghm::best_candidate(scorer, cands).value);
    state.counters["candidates"] = static_cast<double>(cands.size());
}

void BM_score_single_fine(benchmark::State& state) {
    auto clouds = ghm::pipeline_clouds(ghm::gh_pair::e2_h2, {100, 100}, consts());
    const ghm::candidate_scorer scorer(clouds[0], clouds[1]);
    const ghm::embedding_candidate c{ghm::embedding_family::euclidean_plane, {1, 0, 2}, false, 0, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(scorer.score(c));
}

void BM_estimate_desk(benchmark::State& state) {
    const auto pair = static_cast<ghm::gh_pair>(state.range(0));
    ghm::candidate_grid_spec grid;
    grid.offset_steps = 20;
    for (auto _ : state) benchmark::DoNotOptimize(ghm::estimate_gh(pair, grid, consts(), 1).value);
}

}  // namespace

BENCHMARK(BM_compute_constants)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_embed_cloud)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_score_family)->Args({0, 30})->Args({1, 30})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_score_single_fine)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_estimate_desk)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);
