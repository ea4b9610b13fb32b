#include "dancar/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dancar/rng.hpp"

namespace dancar {

namespace {

std::uint64_t encode_pair(NodeId head, NodeId tail) {
    return (static_cast<std::uint64_t>(head) << 32) | tail;
}

// Draws an ordered pair (v,w), v != w, uniformly over all n*(n-1) pairs.
Edge draw_ordered_pair(std::mt19937_64& rng, std::size_t n) {
    const auto v = static_cast<NodeId>(uniform_below(rng, n));
    auto w = static_cast<NodeId>(uniform_below(rng, n - 1));
    if (w >= v) ++w;
    return {v, w};
}

}  // namespace

DirectedGraph::DirectedGraph(std::size_t num_nodes, std::vector<Edge> edges,
                             std::vector<std::string> labels)
    : num_nodes_(num_nodes) {
    for (const Edge& e : edges) {
        if (e.head >= num_nodes_ || e.tail >= num_nodes_) {
            throw std::invalid_argument("edge references node id beyond node count");
        }
    }
    std::erase_if(edges, [](const Edge& e) { return e.head == e.tail; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    if (labels.empty()) {
        labels_.reserve(num_nodes_);
        for (std::size_t v = 0; v < num_nodes_; ++v) labels_.push_back(std::to_string(v));
    } else {
        if (labels.size() != num_nodes_) {
            throw std::invalid_argument("label table size does not match node count");
        }
        labels_ = std::move(labels);
    }

    out_offsets_.assign(num_nodes_ + 1, 0);
    in_offsets_.assign(num_nodes_ + 1, 0);
    for (const Edge& e : edges_) {
        ++out_offsets_[e.head + 1];
        ++in_offsets_[e.tail + 1];
    }
    for (std::size_t v = 0; v < num_nodes_; ++v) {
        out_offsets_[v + 1] += out_offsets_[v];
        in_offsets_[v + 1] += in_offsets_[v];
    }
    out_targets_.resize(edges_.size());
    in_sources_.resize(edges_.size());
    std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
    std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
    for (const Edge& e : edges_) {
        out_targets_[out_fill[e.head]++] = e.tail;
        in_sources_[in_fill[e.tail]++] = e.head;
    }
    // edges_ is sorted by (head, tail), so out lists are ascending; in
    // lists come out ascending as well because heads are visited in order.
}

std::span<const NodeId> DirectedGraph::out_neighbors(NodeId v) const {
    return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const NodeId> DirectedGraph::in_neighbors(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

bool DirectedGraph::has_edge(NodeId head, NodeId tail) const {
    const auto nbrs = out_neighbors(head);
    return std::binary_search(nbrs.begin(), nbrs.end(), tail);
}

std::optional<NodeId> DirectedGraph::node_by_label(std::string_view label) const {
    for (std::size_t v = 0; v < labels_.size(); ++v) {
        if (labels_[v] == label) return static_cast<NodeId>(v);
    }
    return std::nullopt;
}

DirectedGraph parse_edge_list(std::istream& in, ParseStats* stats) {
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> labels;
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> seen;
    ParseStats local;

    auto intern = [&](std::string&& token) -> NodeId {
        auto [it, inserted] = ids.try_emplace(std::move(token), static_cast<NodeId>(labels.size()));
        if (inserted) labels.push_back(it->first);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head, tail, extra;
        if (!(ls >> head)) continue;          // blank line
        if (head.front() == '#') continue;    // comment
        if (!(ls >> tail) || (ls >> extra)) {
            throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                     ": expected exactly 2 tokens");
        }
        const NodeId h = intern(std::move(head));
        const NodeId t = intern(std::move(tail));
        if (h == t) {
            ++local.self_loops_dropped;
            continue;
        }
        if (!seen.insert(encode_pair(h, t)).second) {
            ++local.duplicate_edges_dropped;
            continue;
        }
        edges.push_back({h, t});
    }
    if (stats) *stats = local;
    const std::size_t n = labels.size();
    return DirectedGraph(n, std::move(edges), std::move(labels));
}

DirectedGraph parse_edge_list(const std::string& text, ParseStats* stats) {
    std::istringstream in(text);
    return parse_edge_list(in, stats);
}

DirectedGraph load_edge_list(const std::filesystem::path& path, ParseStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path.string());
    return parse_edge_list(in, stats);
}

void write_edge_list(std::ostream& out, const DirectedGraph& g) {
    for (const Edge& e : g.edges()) {
        out << g.label(e.head) << ' ' << g.label(e.tail) << '\n';
    }
}

void save_edge_list(const std::filesystem::path& path, const DirectedGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list: " + path.string());
    write_edge_list(out, g);
}

namespace {

// Kahn topological order; empty result when the graph has a cycle.
std::vector<NodeId> topological_order(const DirectedGraph& g) {
    const std::size_t n = g.num_nodes();
    std::vector<std::size_t> indegree(n);
    for (std::size_t v = 0; v < n; ++v) indegree[v] = g.in_degree(static_cast<NodeId>(v));
    std::vector<NodeId> order;
    order.reserve(n);
    std::vector<NodeId> ready;
    for (std::size_t v = 0; v < n; ++v) {
        if (indegree[v] == 0) ready.push_back(static_cast<NodeId>(v));
    }
    while (!ready.empty()) {
        const NodeId u = ready.back();
        ready.pop_back();
        order.push_back(u);
        for (const NodeId w : g.out_neighbors(u)) {
            if (--indegree[w] == 0) ready.push_back(w);
        }
    }
    if (order.size() != n) order.clear();
    return order;
}

// Some node lying on a directed cycle; only valid when one exists.
NodeId find_cycle_node(const DirectedGraph& g) {
    enum : unsigned char { White, Gray, Black };
    const std::size_t n = g.num_nodes();
    std::vector<unsigned char> color(n, White);
    std::vector<std::pair<NodeId, std::size_t>> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (color[s] != White) continue;
        stack.emplace_back(static_cast<NodeId>(s), 0);
        color[s] = Gray;
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            const auto nbrs = g.out_neighbors(u);
            if (next < nbrs.size()) {
                const NodeId w = nbrs[next++];
                if (color[w] == Gray) return w;
                if (color[w] == White) {
                    color[w] = Gray;
                    stack.emplace_back(w, 0);
                }
            } else {
                color[u] = Black;
                stack.pop_back();
            }
        }
    }
    throw std::logic_error("find_cycle_node called on an acyclic graph");
}

}  // namespace

DirectedGraph transitive_closure(const DirectedGraph& g) {
    const std::size_t n = g.num_nodes();
    const std::vector<NodeId> order = topological_order(g);
    if (order.empty() && n > 0) {
        const NodeId c = find_cycle_node(g);
        throw std::runtime_error("transitive closure requires a DAG; node '" + g.label(c) +
                                 "' lies on a directed cycle");
    }

    // Reverse topological order: children are final before their parents.
    std::vector<std::vector<NodeId>> descendants(n);
    std::vector<NodeId> merged;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const NodeId u = *it;
        auto& acc = descendants[u];
        for (const NodeId v : g.out_neighbors(u)) {
            merged.clear();
            merged.reserve(acc.size() + descendants[v].size() + 1);
            std::merge(acc.begin(), acc.end(), descendants[v].begin(), descendants[v].end(),
                       std::back_inserter(merged));
            auto pos = std::lower_bound(merged.begin(), merged.end(), v);
            if (pos == merged.end() || *pos != v) merged.insert(pos, v);
            merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
            acc.swap(merged);
        }
    }

    std::vector<Edge> closure;
    for (std::size_t u = 0; u < n; ++u) {
        for (const NodeId w : descendants[u]) closure.push_back({static_cast<NodeId>(u), w});
    }
    return DirectedGraph(n, std::move(closure), g.labels());
}

DirectedGraph largest_weakly_connected_component(const DirectedGraph& g) {
    const std::size_t n = g.num_nodes();
    if (n == 0) return DirectedGraph();

    std::vector<NodeId> component(n, static_cast<NodeId>(n));
    std::vector<std::size_t> size_of;
    std::vector<NodeId> queue;
    for (std::size_t s = 0; s < n; ++s) {
        if (component[s] != n) continue;
        const auto cid = static_cast<NodeId>(size_of.size());
        std::size_t count = 0;
        queue.assign(1, static_cast<NodeId>(s));
        component[s] = cid;
        while (!queue.empty()) {
            const NodeId u = queue.back();
            queue.pop_back();
            ++count;
            for (const NodeId w : g.out_neighbors(u)) {
                if (component[w] == n) { component[w] = cid; queue.push_back(w); }
            }
            for (const NodeId w : g.in_neighbors(u)) {
                if (component[w] == n) { component[w] = cid; queue.push_back(w); }
            }
        }
        size_of.push_back(count);
    }

    // Components are discovered in ascending order of their smallest node
    // id, so keeping the first maximum implements the tie rule.
    NodeId best = 0;
    for (NodeId c = 1; c < size_of.size(); ++c) {
        if (size_of[c] > size_of[best]) best = c;
    }

    std::vector<NodeId> remap(n, static_cast<NodeId>(n));
    std::vector<std::string> labels;
    labels.reserve(size_of[best]);
    for (std::size_t v = 0; v < n; ++v) {
        if (component[v] == best) {
            remap[v] = static_cast<NodeId>(labels.size());
            labels.push_back(g.label(static_cast<NodeId>(v)));
        }
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if (component[e.head] == best && component[e.tail] == best) {
            edges.push_back({remap[e.head], remap[e.tail]});
        }
    }
    const std::size_t kept = labels.size();
    return DirectedGraph(kept, std::move(edges), std::move(labels));
}

EdgeSplit split_edges(const DirectedGraph& g, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0) || train_fraction > 1.0) {
        throw std::invalid_argument("train_fraction must lie in (0, 1]");
    }
    const std::size_t m = g.num_edges();
    const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(m)));

    std::vector<std::size_t> index(m);
    for (std::size_t i = 0; i < m; ++i) index[i] = i;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n_train && i + 1 < m; ++i) {
        const std::size_t j = i + uniform_below(rng, m - i);
        std::swap(index[i], index[j]);
    }

    std::vector<Edge> train_edges, held_out;
    train_edges.reserve(n_train);
    held_out.reserve(m - n_train);
    for (std::size_t i = 0; i < m; ++i) {
        (i < n_train ? train_edges : held_out).push_back(g.edges()[index[i]]);
    }
    std::sort(held_out.begin(), held_out.end());
    return {DirectedGraph(g.num_nodes(), std::move(train_edges), g.labels()), std::move(held_out)};
}

NegativeSampler::NegativeSampler(const DirectedGraph& g, NegativeMode mode)
    : g_(&g), mode_(mode) {
    const std::size_t n = g.num_nodes();
    const std::size_t total = n * (n - (n > 0 ? 1 : 0));
    if (total == 0) {
        throw std::runtime_error("no ordered pairs to sample: graph has fewer than 2 nodes");
    }
    if (mode_ == NegativeMode::Exact) {
        const std::size_t complement = total - g.num_edges();
        if (complement == 0) {
            throw std::runtime_error("no negative pairs: the graph is a complete digraph");
        }
        if (g.num_edges() * 2 > total) {
            // Dense edge set: rejection would thrash, enumerate E^c once.
            complement_.reserve(complement);
            for (NodeId v = 0; v < n; ++v) {
                const auto nbrs = g.out_neighbors(v);
                std::size_t k = 0;
                for (NodeId w = 0; w < n; ++w) {
                    if (w == v) continue;
                    while (k < nbrs.size() && nbrs[k] < w) ++k;
                    if (k < nbrs.size() && nbrs[k] == w) continue;
                    complement_.push_back({v, w});
                }
            }
        }
    }
}

Edge NegativeSampler::sample(std::mt19937_64& rng) const {
    if (!complement_.empty()) {
        return complement_[uniform_below(rng, complement_.size())];
    }
    const std::size_t n = g_->num_nodes();
    if (mode_ == NegativeMode::Approximate) {
        return draw_ordered_pair(rng, n);
    }
    for (;;) {
        const Edge e = draw_ordered_pair(rng, n);
        if (!g_->has_edge(e.head, e.tail)) return e;
    }
}

void NegativeSampler::sample(std::mt19937_64& rng, std::size_t count,
                             std::vector<Edge>& out) const {
    out.clear();
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample(rng));
}

std::vector<Edge> sample_negative_pairs(const DirectedGraph& g, std::size_t count,
                                        std::mt19937_64& rng, NegativeMode mode) {
    NegativeSampler sampler(g, mode);
    std::vector<Edge> out;
    sampler.sample(rng, count, out);
    return out;
}

}  // namespace dancar
