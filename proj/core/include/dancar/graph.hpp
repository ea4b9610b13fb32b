#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dancar {

using NodeId = std::uint32_t;

struct Edge {
    NodeId head = 0;
    NodeId tail = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple directed graph over dense node ids 0..|V|-1 with an optional
/// string-label table. Immutable after construction; self-loops and
/// duplicate edges are dropped on construction.
class DirectedGraph {
public:
    DirectedGraph() = default;
    DirectedGraph(std::size_t num_nodes, std::vector<Edge> edges,
                  std::vector<std::string> labels = {});

    std::size_t num_nodes() const { return num_nodes_; }
    std::size_t num_edges() const { return edges_.size(); }
    bool empty() const { return num_nodes_ == 0; }

    // Sorted by (head, tail).
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const NodeId> out_neighbors(NodeId v) const;
    std::span<const NodeId> in_neighbors(NodeId v) const;
    std::size_t out_degree(NodeId v) const { return out_neighbors(v).size(); }
    std::size_t in_degree(NodeId v) const { return in_neighbors(v).size(); }

    bool has_edge(NodeId head, NodeId tail) const;

    const std::string& label(NodeId v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<NodeId> node_by_label(std::string_view label) const;

private:
    std::size_t num_nodes_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> out_offsets_;
    std::vector<NodeId> out_targets_;
    std::vector<std::size_t> in_offsets_;
    std::vector<NodeId> in_sources_;
};

struct ParseStats {
    std::size_t duplicate_edges_dropped = 0;
    std::size_t self_loops_dropped = 0;
};

/// Parses "head tail" lines; '#' starts a comment line, blank lines are
/// skipped. Labels are interned to dense ids in first-appearance order.
/// Throws on lines that do not hold exactly two tokens.
DirectedGraph parse_edge_list(std::istream& in, ParseStats* stats = nullptr);
DirectedGraph parse_edge_list(const std::string& text, ParseStats* stats = nullptr);
DirectedGraph load_edge_list(const std::filesystem::path& path, ParseStats* stats = nullptr);

void write_edge_list(std::ostream& out, const DirectedGraph& g);
void save_edge_list(const std::filesystem::path& path, const DirectedGraph& g);

/// Edge (u,w) for every directed path u ~> w of length >= 1.
/// Input must be a DAG; throws naming a node on a cycle otherwise.
DirectedGraph transitive_closure(const DirectedGraph& g);

/// Induced subgraph on the largest node set connected when edge direction
/// is ignored; ties broken by the component holding the smallest node id.
/// Node ids are re-densified in ascending order of the original ids.
DirectedGraph largest_weakly_connected_component(const DirectedGraph& g);

struct EdgeSplit {
    DirectedGraph train;          // keeps all nodes of the input
    std::vector<Edge> held_out;   // sorted
};

/// Uniform partition of the edge set; |train| = round(fraction * |E|).
EdgeSplit split_edges(const DirectedGraph& g, double train_fraction, std::uint64_t seed);

enum class NegativeMode { Exact, Approximate };

/// Uniform sampler over non-edges (Exact) or over all ordered pairs with
/// v != w (Approximate, the stated fallback when E^c is intractable).
/// Exact mode rejects against the edge set and switches to complement
/// enumeration when edge density exceeds 1/2.
class NegativeSampler {
public:
    NegativeSampler(const DirectedGraph& g, NegativeMode mode);

    Edge sample(std::mt19937_64& rng) const;
    void sample(std::mt19937_64& rng, std::size_t count, std::vector<Edge>& out) const;

private:
    const DirectedGraph* g_;
    NegativeMode mode_;
    std::vector<Edge> complement_;  // filled only for the dense exact case
};

std::vector<Edge> sample_negative_pairs(const DirectedGraph& g, std::size_t count,
                                        std::mt19937_64& rng, NegativeMode mode);

}  // namespace dancar
