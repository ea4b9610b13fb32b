#include "dancar/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dancar/parallel.hpp"
#include "scan.hpp"

namespace dancar {

namespace {

void fill_rates(EvalReport& r) {
    const std::size_t predicted = r.true_positives + r.false_positives;
    const std::size_t actual = r.true_positives + r.false_negatives;
    r.precision = predicted == 0 ? 0.0
                                 : static_cast<double>(r.true_positives) /
                                       static_cast<double>(predicted);
    r.recall = actual == 0 ? 0.0
                           : static_cast<double>(r.true_positives) / static_cast<double>(actual);
    r.f1 = (r.precision + r.recall) == 0.0
               ? 0.0
               : 2.0 * r.precision * r.recall / (r.precision + r.recall);
}

EvalReport scored_scan(const DirectedGraph& truth, const DancarEmbedding& emb,
                       const EvalOptions& options) {
    if (emb.num_nodes != truth.num_nodes()) {
        throw std::invalid_argument("embedding does not cover the graph's node set");
    }
    const ContainmentScanner scanner(emb, options.model, options.strategy);
    const int threads = resolve_thread_count(options.threads);
    const std::size_t n = emb.num_nodes;

    struct Counts {
        std::size_t predicted = 0, hits = 0;
    };
    std::vector<Counts> per_chunk(threads > 1 ? threads : 1);
    parallel_chunks(n, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        Counts local;
        ScanScratch scratch;
        for (std::size_t v = begin; v < end; ++v) {
            scanner.for_each_predicted_tail(static_cast<NodeId>(v), scratch, [&](NodeId w) {
                ++local.predicted;
                if (truth.has_edge(static_cast<NodeId>(v), w)) ++local.hits;
            });
        }
        per_chunk[chunk] = local;
    });

    EvalReport report;
    std::size_t predicted = 0;
    for (const Counts& c : per_chunk) {
        predicted += c.predicted;
        report.true_positives += c.hits;
    }
    report.false_positives = predicted - report.true_positives;
    report.false_negatives = truth.num_edges() - report.true_positives;
    fill_rates(report);
    return report;
}

}  // namespace

EvalReport reconstruction_report(const DirectedGraph& g, const DancarEmbedding& emb,
                                 const EvalOptions& options) {
    return scored_scan(g, emb, options);
}

EvalReport link_prediction_report(const DirectedGraph& full_graph,
                                  const DirectedGraph& train_graph, const DancarEmbedding& emb,
                                  const EvalOptions& options) {
    if (train_graph.num_nodes() != full_graph.num_nodes()) {
        throw std::invalid_argument("train and full graphs disagree on the node set");
    }
    for (const Edge& e : train_graph.edges()) {
        if (!full_graph.has_edge(e.head, e.tail)) {
            throw std::invalid_argument("train edges are not a subset of the full edge set");
        }
    }
    return scored_scan(full_graph, emb, options);
}

double map_score(const DirectedGraph& g, const EdgeRanker& ranker, MapDirection direction) {
    const std::size_t n = g.num_nodes();
    std::vector<std::pair<double, NodeId>> ranked;
    ranked.reserve(n > 0 ? n - 1 : 0);

    double ap_sum = 0.0;
    std::size_t evaluated = 0;
    for (std::size_t vi = 0; vi < n; ++vi) {
        const auto v = static_cast<NodeId>(vi);
        const std::size_t truth_count =
            direction == MapDirection::Out ? g.out_degree(v) : g.in_degree(v);
        if (truth_count == 0) continue;

        ranked.clear();
        for (std::size_t wi = 0; wi < n; ++wi) {
            const auto w = static_cast<NodeId>(wi);
            if (w == v) continue;
            const double s = direction == MapDirection::Out ? ranker(v, w) : ranker(w, v);
            ranked.emplace_back(s, w);
        }
        std::sort(ranked.begin(), ranked.end());  // ascending score, ties by id

        std::size_t hits = 0;
        double ap = 0.0;
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            const NodeId w = ranked[i].second;
            const bool is_true = direction == MapDirection::Out ? g.has_edge(v, w)
                                                                : g.has_edge(w, v);
            if (is_true) {
                ++hits;
                ap += static_cast<double>(hits) / static_cast<double>(i + 1);
            }
        }
        ap_sum += ap / static_cast<double>(truth_count);
        ++evaluated;
    }
    if (evaluated == 0) {
        throw std::invalid_argument("map_score: no node has a neighbor in the chosen direction");
    }
    return ap_sum / static_cast<double>(evaluated);
}

namespace {

// Ranks with ties assigned the average of their positions (1-based).
std::vector<double> average_ranks(std::span<const double> xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("spearman: length mismatch");
    if (xs.size() < 2) throw std::invalid_argument("spearman: need at least 2 observations");

    const std::vector<double> rx = average_ranks(xs);
    const std::vector<double> ry = average_ranks(ys);
    const double n = static_cast<double>(xs.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += rx[i];
        mean_y += ry[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = rx[i] - mean_x;
        const double dy = ry[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::invalid_argument("spearman: undefined for a constant input vector");
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace dancar
