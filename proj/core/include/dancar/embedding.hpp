#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dancar/graph.hpp"

namespace dancar {

/// Per-node anchor x_v, disk center c_v (both in R^k) and disk radius r_v.
/// A directed edge (v,w) is read off the embedding when x_w lies in the
/// closed ball D(c_v, r_v).
struct DancarEmbedding {
    int dim = 0;
    std::size_t num_nodes = 0;
    std::vector<double> anchors;  // num_nodes * dim, node-major
    std::vector<double> centers;  // num_nodes * dim, node-major
    std::vector<double> radii;    // num_nodes

    static constexpr double kMinRadius = 1e-6;

    static DancarEmbedding zeros(std::size_t num_nodes, int dim);

    std::span<const double> anchor(NodeId v) const {
        return {anchors.data() + static_cast<std::size_t>(v) * dim, static_cast<std::size_t>(dim)};
    }
    std::span<double> anchor(NodeId v) {
        return {anchors.data() + static_cast<std::size_t>(v) * dim, static_cast<std::size_t>(dim)};
    }
    std::span<const double> center(NodeId v) const {
        return {centers.data() + static_cast<std::size_t>(v) * dim, static_cast<std::size_t>(dim)};
    }
    std::span<double> center(NodeId v) {
        return {centers.data() + static_cast<std::size_t>(v) * dim, static_cast<std::size_t>(dim)};
    }
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Signed containment margin d(c_v, x_w) - r_v; <= 0 means the edge (v,w)
/// is reconstructed (boundary counts as contained). Throws when v == w.
double score(const DancarEmbedding& emb, NodeId v, NodeId w);

/// Disk Embedding baseline: ||c_u - c_v|| + r_u - r_v; <= 0 iff disk u is
/// contained in disk v. Anchors are ignored. Throws when u == v.
double disk_embedding_score(const DancarEmbedding& emb, NodeId u, NodeId v);

enum class ScoreModel { Dancar, Disk };

double edge_score(const DancarEmbedding& emb, NodeId head, NodeId tail, ScoreModel model);

enum class ScanStrategy {
    Auto,        // grid for low dimensions, brute force otherwise
    BruteForce,
    Grid,        // uniform hash grid over anchor (or center) coordinates
};

struct ReconstructOptions {
    ScoreModel model = ScoreModel::Dancar;
    ScanStrategy strategy = ScanStrategy::Auto;
    int threads = 1;  // <= 1 means serial
};

/// All ordered pairs v != w with edge_score <= 0, sorted by (head, tail).
/// Grid and brute-force strategies produce bit-identical output.
std::vector<Edge> reconstruct_edges(const DancarEmbedding& emb,
                                    const ReconstructOptions& options = {});

/// Same predicate over an explicit candidate list; input order preserved.
std::vector<Edge> reconstruct_edges(const DancarEmbedding& emb,
                                    std::span<const Edge> candidate_pairs,
                                    ScoreModel model = ScoreModel::Dancar);

}  // namespace dancar
