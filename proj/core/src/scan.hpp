#pragma once

// All-pairs containment scan shared by reconstruction and evaluation.
// The grid strategy buckets query points (anchors for DANCAR, centers for
// the disk baseline) into a uniform hash grid with cell edge equal to the
// maximum radius, then visits only cells overlapping each disk's bounding
// box. Candidates always go through the same exact score test as the
// brute-force path, so both strategies emit identical edges.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dancar/embedding.hpp"

namespace dancar {

// Per-thread scratch space; for_each_predicted_tail is const and safe to
// call concurrently as long as each caller brings its own scratch.
struct ScanScratch {
    std::vector<NodeId> candidates;
    std::vector<std::int64_t> lo, hi, cur;
};

class ContainmentScanner {
public:
    ContainmentScanner(const DancarEmbedding& emb, ScoreModel model, ScanStrategy strategy)
        : emb_(&emb), model_(model) {
        const std::size_t n = emb.num_nodes;
        if (strategy == ScanStrategy::Auto) {
            use_grid_ = emb.dim <= 3 && n >= 64;
        } else {
            use_grid_ = strategy == ScanStrategy::Grid;
        }
        if (!use_grid_ || n == 0) {
            use_grid_ = false;
            return;
        }
        max_radius_ = *std::max_element(emb.radii.begin(), emb.radii.end());
        double max_abs = 0.0;
        for (const double x : emb.centers) max_abs = std::max(max_abs, std::abs(x));
        if (model_ == ScoreModel::Dancar) {
            for (const double x : emb.anchors) max_abs = std::max(max_abs, std::abs(x));
        }
        // Keep cell indexes small enough for exact integer arithmetic even
        // when every radius is near zero.
        cell_ = std::max(max_radius_, (1.0 + max_abs) * 1e-9);
        buckets_.reserve(n * 2);
        for (std::size_t v = 0; v < n; ++v) {
            const auto p = query_point(static_cast<NodeId>(v));
            std::uint64_t h = kHashBasis;
            for (const double x : p) h = hash_step(h, cell_coord(x));
            buckets_[h].push_back(static_cast<NodeId>(v));
        }
        // Ids were inserted in ascending order, so every bucket is sorted.
    }

    // Calls fn(w) for every w != v with edge_score(v, w) <= 0, ascending w.
    template <class F>
    void for_each_predicted_tail(NodeId v, ScanScratch& scratch, F&& fn) const {
        const std::size_t n = emb_->num_nodes;
        if (!use_grid_) {
            scan_all(v, fn);
            return;
        }

        // Pairs whose query point is farther than `reach` from c_v are
        // provably non-edges under either score.
        const double reach =
            model_ == ScoreModel::Dancar ? emb_->radii[v] : max_radius_ - emb_->radii[v];
        if (reach < 0.0) return;

        const auto c = emb_->center(v);
        const int k = emb_->dim;
        scratch.lo.resize(k);
        scratch.hi.resize(k);
        double cells = 1.0;
        for (int i = 0; i < k; ++i) {
            scratch.lo[i] = cell_coord(c[i] - reach);
            scratch.hi[i] = cell_coord(c[i] + reach);
            cells *= static_cast<double>(scratch.hi[i] - scratch.lo[i] + 1);
        }
        if (cells > static_cast<double>(n)) {
            // Cheaper to test everything than to walk the cell range.
            scan_all(v, fn);
            return;
        }

        scratch.candidates.clear();
        scratch.cur = scratch.lo;
        for (;;) {
            std::uint64_t h = kHashBasis;
            for (const std::int64_t coord : scratch.cur) h = hash_step(h, coord);
            if (const auto it = buckets_.find(h); it != buckets_.end()) {
                scratch.candidates.insert(scratch.candidates.end(), it->second.begin(),
                                          it->second.end());
            }
            int i = 0;
            for (; i < k; ++i) {
                if (++scratch.cur[i] <= scratch.hi[i]) break;
                scratch.cur[i] = scratch.lo[i];
            }
            if (i == k) break;
        }
        // Hash collisions can merge buckets and hand the same candidate
        // back twice; duplicates must not reach fn.
        std::sort(scratch.candidates.begin(), scratch.candidates.end());
        scratch.candidates.erase(
            std::unique(scratch.candidates.begin(), scratch.candidates.end()),
            scratch.candidates.end());
        for (const NodeId w : scratch.candidates) {
            if (w == v) continue;
            if (edge_score(*emb_, v, w, model_) <= 0.0) fn(w);
        }
    }

private:
    static constexpr std::uint64_t kHashBasis = 1469598103934665603ull;

    static std::uint64_t hash_step(std::uint64_t h, std::int64_t coord) {
        h ^= static_cast<std::uint64_t>(coord);
        return h * 1099511628211ull;
    }

    std::int64_t cell_coord(double x) const {
        return static_cast<std::int64_t>(std::floor(x / cell_));
    }

    template <class F>
    void scan_all(NodeId v, F&& fn) const {
        const std::size_t n = emb_->num_nodes;
        for (std::size_t w = 0; w < n; ++w) {
            if (w == v) continue;
            if (edge_score(*emb_, v, static_cast<NodeId>(w), model_) <= 0.0) {
                fn(static_cast<NodeId>(w));
            }
        }
    }

    std::span<const double> query_point(NodeId w) const {
        return model_ == ScoreModel::Dancar ? emb_->anchor(w) : emb_->center(w);
    }

    const DancarEmbedding* emb_;
    ScoreModel model_;
    bool use_grid_ = false;
    double max_radius_ = 0.0;
    double cell_ = 1.0;
    std::unordered_map<std::uint64_t, std::vector<NodeId>> buckets_;
};

}  // namespace dancar
