#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dancar/embedding.hpp"
#include "dancar/graph.hpp"

namespace dancar {

struct Hyperparams {
    double margin = 0.01;
    double lambda_neg = 8.0;
    double lambda_anc = 1.0;
    std::size_t b1 = 10000;   // positive-loss / anchor-loss batch size
    std::size_t b2 = 100000;  // negative-loss batch size
    double adam_alpha = 0.05;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::size_t iterations = 0;
    std::uint64_t seed = 0;
    NegativeMode negative_mode = NegativeMode::Approximate;
    ScoreModel model = ScoreModel::Dancar;

    void validate() const;  // throws std::invalid_argument on bad ranges
};

struct LossBreakdown {
    double l_pos = 0.0;
    double l_neg = 0.0;
    double l_anc = 0.0;
    double total = 0.0;
};

/// Mean over the batch of ReLU(score(v,w) + margin). Over the full edge
/// set this is the positive loss exactly; on a minibatch it is an
/// unbiased estimator. Throws on an empty batch.
double positive_loss(const DancarEmbedding& emb, std::span<const Edge> edge_batch,
                     double margin, ScoreModel model = ScoreModel::Dancar);

/// Mean over the batch of ReLU(-score(v,w) + margin) for non-edge pairs.
double negative_loss(const DancarEmbedding& emb, std::span<const Edge> pair_batch,
                     double margin, ScoreModel model = ScoreModel::Dancar);

/// Mean over the batch of ReLU(d(c_v,x_v) - r_v + margin); keeps each
/// anchor inside its own disk.
double anchor_loss(const DancarEmbedding& emb, std::span<const NodeId> node_batch,
                   double margin);

/// l_pos + lambda_neg * l_neg + lambda_anc * l_anc. An empty batch
/// contributes zero to its term. In Disk mode the anchor term is dropped
/// (the baseline has no anchors).
LossBreakdown total_loss(const DancarEmbedding& emb,
                         std::span<const Edge> edge_batch,
                         std::span<const Edge> negative_batch,
                         std::span<const NodeId> node_batch,
                         const Hyperparams& hp);

struct Gradients {
    std::vector<double> anchors;
    std::vector<double> centers;
    std::vector<double> radii;

    static Gradients zeros(std::size_t num_nodes, int dim);
};

/// Exact analytic gradient of the batch total loss with respect to every
/// anchor, center and radius. The ReLU subgradient at 0 is taken as 0;
/// a coincident-point distance gradient (d = 0) uses the zero direction.
Gradients loss_gradients(const DancarEmbedding& emb,
                         std::span<const Edge> edge_batch,
                         std::span<const Edge> negative_batch,
                         std::span<const NodeId> node_batch,
                         const Hyperparams& hp);

}  // namespace dancar
