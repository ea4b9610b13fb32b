#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "dancar/embedding.hpp"
#include "dancar/graph.hpp"
#include "dancar/losses.hpp"

namespace dancar {

struct AdamState {
    std::vector<double> m_anchors, v_anchors;
    std::vector<double> m_centers, v_centers;
    std::vector<double> m_radii, v_radii;
    std::uint64_t t = 0;

    static AdamState zeros(std::size_t num_nodes, int dim);
};

/// One bias-corrected Adam update over a parameter block. t is the
/// already-incremented step counter (>= 1). Throws on a non-finite
/// gradient, naming the block.
void adam_step(std::span<double> params, std::span<const double> grads,
               std::span<double> m, std::span<double> v, std::uint64_t t,
               double alpha, double beta1, double beta2, double eps,
               std::string_view block_name);

/// Centers i.i.d. uniform on [-1,1]^k, radii 0.1, anchors copied from
/// centers; this initial arrangement reconstructs almost no edges.
DancarEmbedding init_embedding(const DirectedGraph& g, int dim, std::uint64_t seed);

struct TrainReport {
    std::vector<LossBreakdown> history;  // one entry per iteration run
    std::vector<double> step_seconds;    // wall clock per iteration
    DancarEmbedding embedding;
    std::uint64_t seed = 0;
};

/// Owns one embedding and advances it one stochastic-gradient iteration
/// at a time. Per iteration: sample min(b1,|E|) edges and min(b1,|V|)
/// nodes (full sets when they fit), draw b2 fresh negatives, take one
/// Adam step, clamp radii to DancarEmbedding::kMinRadius.
class Trainer {
public:
    Trainer(const DirectedGraph& g, const Hyperparams& hp, int dim);
    ~Trainer();
    Trainer(Trainer&&) noexcept;
    Trainer& operator=(Trainer&&) noexcept;

    void step();
    void run(std::size_t iterations);

    const DancarEmbedding& embedding() const { return emb_; }
    const std::vector<LossBreakdown>& history() const { return history_; }
    const std::vector<double>& step_seconds() const { return step_seconds_; }

    TrainReport take_report() &&;

private:
    const DirectedGraph* graph_;
    Hyperparams hp_;
    DancarEmbedding emb_;
    AdamState adam_;
    Gradients grads_;
    std::mt19937_64 rng_;
    std::unique_ptr<NegativeSampler> negatives_;
    std::vector<LossBreakdown> history_;
    std::vector<double> step_seconds_;
    std::vector<Edge> edge_batch_;
    std::vector<Edge> negative_batch_;
    std::vector<NodeId> node_batch_;
    std::vector<NodeId> all_nodes_;
};

TrainReport train(const DirectedGraph& g, const Hyperparams& hp, int dim);

}  // namespace dancar
