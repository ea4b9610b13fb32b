#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "dancar/embedding.hpp"
#include "dancar/graph.hpp"

namespace dancar {

struct EvalReport {
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
    double precision = 0.0;  // 0 when nothing is predicted
    double recall = 0.0;
    double f1 = 0.0;
    std::optional<double> map;
    std::optional<double> spearman;
};

struct EvalOptions {
    ScoreModel model = ScoreModel::Dancar;
    ScanStrategy strategy = ScanStrategy::Auto;
    int threads = 1;
};

/// Scores the all-pairs reconstruction of `emb` against g's edge set.
/// The embedding must cover exactly g's nodes.
EvalReport reconstruction_report(const DirectedGraph& g, const DancarEmbedding& emb,
                                 const EvalOptions& options = {});

/// Same scan, scored against the full graph's edge set (held-out edges
/// count as positives). Train edges must be a subset of full edges.
EvalReport link_prediction_report(const DirectedGraph& full_graph,
                                  const DirectedGraph& train_graph,
                                  const DancarEmbedding& emb,
                                  const EvalOptions& options = {});

enum class MapDirection { Out, In };

/// Scoring function over ordered pairs; lower score ranks higher.
/// ranker(head, tail) scores the directed edge head -> tail.
using EdgeRanker = std::function<double(NodeId, NodeId)>;

/// Mean over nodes with at least one true neighbor (in the chosen
/// direction) of the average precision of that neighbor set, candidates
/// ranked by ascending score with ties broken by ascending node id.
double map_score(const DirectedGraph& g, const EdgeRanker& ranker,
                 MapDirection direction = MapDirection::Out);

/// Spearman rank correlation: Pearson correlation of rank vectors with
/// average ranks for ties. Throws on length mismatch, length < 2, or a
/// constant input vector.
double spearman(std::span<const double> xs, std::span<const double> ys);

}  // namespace dancar
