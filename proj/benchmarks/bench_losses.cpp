#include <benchmark/benchmark.h>

#include <random>

#include "dancar/losses.hpp"
#include "dancar/rng.hpp"

using namespace dancar;

namespace {

DancarEmbedding make_embedding(std::size_t n, int dim) {
    std::mt19937_64 rng(1);
    DancarEmbedding emb = DancarEmbedding::zeros(n, dim);
    for (double& x : emb.anchors) x = uniform_in(rng, -2.0, 2.0);
    for (double& c : emb.centers) c = uniform_in(rng, -2.0, 2.0);
    for (double& r : emb.radii) r = uniform_in(rng, 0.05, 1.0);
    return emb;
}

std::vector<Edge> make_pairs(std::size_t n, std::size_t count) {
    std::mt19937_64 rng(2);
    std::vector<Edge> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto v = static_cast<NodeId>(uniform_below(rng, n));
        auto w = static_cast<NodeId>(uniform_below(rng, n - 1));
        if (w >= v) ++w;
        pairs.push_back({v, w});
    }
    return pairs;
}

void bm_total_loss(benchmark::State& state) {
    const std::size_t n = 2000;
    const int dim = static_cast<int>(state.range(0));
    const DancarEmbedding emb = make_embedding(n, dim);
    const std::vector<Edge> pos = make_pairs(n, 10000);
    const std::vector<Edge> neg = make_pairs(n, 100000);
    std::vector<NodeId> nodes(n);
    for (std::size_t v = 0; v < n; ++v) nodes[v] = static_cast<NodeId>(v);
    Hyperparams hp;
    for (auto _ : state) {
        benchmark::DoNotOptimize(total_loss(emb, pos, neg, nodes, hp));
    }
}

void bm_loss_gradients(benchmark::State& state) {
    const std::size_t n = 2000;
    const int dim = static_cast<int>(state.range(0));
    const DancarEmbedding emb = make_embedding(n, dim);
    const std::vector<Edge> pos = make_pairs(n, 10000);
    const std::vector<Edge> neg = make_pairs(n, 100000);
    std::vector<NodeId> nodes(n);
    for (std::size_t v = 0; v < n; ++v) nodes[v] = static_cast<NodeId>(v);
    Hyperparams hp;
    for (auto _ : state) {
        benchmark::DoNotOptimize(loss_gradients(emb, pos, neg, nodes, hp));
    }
}

}  // namespace

BENCHMARK(bm_total_loss)->Arg(2)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_loss_gradients)->Arg(2)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
