#pragma once

#include <span>

#include "dancar/losses.hpp"

namespace dancar::detail {

// Single pass over the batches producing both the loss breakdown and the
// gradient; empty batches contribute zero rather than erroring, which is
// what the training loop needs for degenerate graphs.
LossBreakdown evaluate_with_gradients(const DancarEmbedding& emb,
                                      std::span<const Edge> edge_batch,
                                      std::span<const Edge> negative_batch,
                                      std::span<const NodeId> node_batch, const Hyperparams& hp,
                                      Gradients& grads);

}  // namespace dancar::detail
