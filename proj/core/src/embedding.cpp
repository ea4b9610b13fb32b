#include "dancar/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dancar/parallel.hpp"
#include "scan.hpp"

namespace dancar {

DancarEmbedding DancarEmbedding::zeros(std::size_t num_nodes, int dim) {
    if (dim < 1) throw std::invalid_argument("embedding dimension must be >= 1");
    DancarEmbedding emb;
    emb.dim = dim;
    emb.num_nodes = num_nodes;
    emb.anchors.assign(num_nodes * static_cast<std::size_t>(dim), 0.0);
    emb.centers.assign(num_nodes * static_cast<std::size_t>(dim), 0.0);
    emb.radii.assign(num_nodes, 0.0);
    return emb;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double score(const DancarEmbedding& emb, NodeId v, NodeId w) {
    if (v == w) throw std::invalid_argument("score requires two distinct nodes");
    return euclidean_distance(emb.center(v), emb.anchor(w)) - emb.radii[v];
}

double disk_embedding_score(const DancarEmbedding& emb, NodeId u, NodeId v) {
    if (u == v) throw std::invalid_argument("disk_embedding_score requires two distinct nodes");
    return euclidean_distance(emb.center(u), emb.center(v)) + emb.radii[u] - emb.radii[v];
}

double edge_score(const DancarEmbedding& emb, NodeId head, NodeId tail, ScoreModel model) {
    return model == ScoreModel::Dancar ? score(emb, head, tail)
                                       : disk_embedding_score(emb, head, tail);
}

std::vector<Edge> reconstruct_edges(const DancarEmbedding& emb,
                                    const ReconstructOptions& options) {
    const ContainmentScanner scanner(emb, options.model, options.strategy);
    const std::size_t n = emb.num_nodes;
    const int threads = resolve_thread_count(options.threads);

    std::vector<std::vector<Edge>> per_chunk(threads > 1 ? threads : 1);
    parallel_chunks(n, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& out = per_chunk[chunk];
        ScanScratch scratch;
        for (std::size_t v = begin; v < end; ++v) {
            scanner.for_each_predicted_tail(static_cast<NodeId>(v), scratch, [&](NodeId w) {
                out.push_back({static_cast<NodeId>(v), w});
            });
        }
    });

    std::vector<Edge> edges;
    if (per_chunk.size() == 1) {
        edges = std::move(per_chunk.front());
    } else {
        std::size_t total = 0;
        for (const auto& c : per_chunk) total += c.size();
        edges.reserve(total);
        for (auto& c : per_chunk) edges.insert(edges.end(), c.begin(), c.end());
    }
    return edges;  // heads ascend across chunks, tails ascend per head
}

std::vector<Edge> reconstruct_edges(const DancarEmbedding& emb,
                                    std::span<const Edge> candidate_pairs, ScoreModel model) {
    std::vector<Edge> out;
    for (const Edge& e : candidate_pairs) {
        if (e.head == e.tail) continue;
        if (edge_score(emb, e.head, e.tail, model) <= 0.0) out.push_back(e);
    }
    return out;
}

}  // namespace dancar
