#include <benchmark/benchmark.h>

#include <random>

#include "dancar/graph.hpp"
#include "dancar/rng.hpp"

using namespace dancar;

namespace {

DirectedGraph make_dag(std::size_t n, double edge_prob) {
    std::mt19937_64 rng(11);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (uniform_unit(rng) < edge_prob) {
                edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
            }
        }
    }
    return DirectedGraph(n, std::move(edges));
}

void bm_transitive_closure(benchmark::State& state) {
    const DirectedGraph g = make_dag(static_cast<std::size_t>(state.range(0)), 0.02);
    for (auto _ : state) {
        benchmark::DoNotOptimize(transitive_closure(g));
    }
}

void bm_negative_sampling(benchmark::State& state) {
    const DirectedGraph g = make_dag(1000, 0.02);
    const NegativeSampler sampler(g, NegativeMode::Exact);
    std::mt19937_64 rng(13);
    std::vector<Edge> out;
    for (auto _ : state) {
        sampler.sample(rng, static_cast<std::size_t>(state.range(0)), out);
        benchmark::DoNotOptimize(out);
    }
}

}  // namespace

BENCHMARK(bm_transitive_closure)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_negative_sampling)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
