#include <benchmark/benchmark.h>

#include <random>

#include "dancar/embedding.hpp"
#include "dancar/rng.hpp"

using namespace dancar;

namespace {

DancarEmbedding make_embedding(std::size_t n, int dim) {
    std::mt19937_64 rng(7);
    DancarEmbedding emb = DancarEmbedding::zeros(n, dim);
    for (double& x : emb.anchors) x = uniform_in(rng, -5.0, 5.0);
    for (double& c : emb.centers) c = uniform_in(rng, -5.0, 5.0);
    for (double& r : emb.radii) r = uniform_in(rng, 0.05, 0.5);
    return emb;
}

void bm_reconstruct_brute(benchmark::State& state) {
    const DancarEmbedding emb = make_embedding(static_cast<std::size_t>(state.range(0)), 2);
    ReconstructOptions opts;
    opts.strategy = ScanStrategy::BruteForce;
    for (auto _ : state) {
        benchmark::DoNotOptimize(reconstruct_edges(emb, opts));
    }
}

void bm_reconstruct_grid(benchmark::State& state) {
    const DancarEmbedding emb = make_embedding(static_cast<std::size_t>(state.range(0)), 2);
    ReconstructOptions opts;
    opts.strategy = ScanStrategy::Grid;
    for (auto _ : state) {
        benchmark::DoNotOptimize(reconstruct_edges(emb, opts));
    }
}

void bm_reconstruct_threads(benchmark::State& state) {
    const DancarEmbedding emb = make_embedding(4000, 2);
    ReconstructOptions opts;
    opts.strategy = ScanStrategy::Grid;
    opts.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reconstruct_edges(emb, opts));
    }
}

}  // namespace

BENCHMARK(bm_reconstruct_brute)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_reconstruct_grid)->Arg(500)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_reconstruct_threads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
