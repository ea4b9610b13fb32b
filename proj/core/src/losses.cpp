#include "dancar/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace dancar {

namespace {

double relu(double x) { return x > 0.0 ? x : 0.0; }

void require_nonempty(std::span<const Edge> batch, const char* what) {
    if (batch.empty()) throw std::invalid_argument(std::string(what) + ": empty batch");
}

// Adds weight * d(score)/d(params) for one pair under the given model.
// The subgradient of the distance at coincident points is taken as zero.
void accumulate_score_gradient(const DancarEmbedding& emb, NodeId head, NodeId tail,
                               ScoreModel model, double weight, Gradients& out) {
    const int k = emb.dim;
    const auto c = emb.center(head);
    if (model == ScoreModel::Dancar) {
        const auto x = emb.anchor(tail);
        const double d = euclidean_distance(c, x);
        if (d > 0.0) {
            double* gc = out.centers.data() + static_cast<std::size_t>(head) * k;
            double* gx = out.anchors.data() + static_cast<std::size_t>(tail) * k;
            for (int i = 0; i < k; ++i) {
                const double u = (c[i] - x[i]) / d;
                gc[i] += weight * u;
                gx[i] -= weight * u;
            }
        }
        out.radii[head] -= weight;
    } else {
        const auto ct = emb.center(tail);
        const double d = euclidean_distance(c, ct);
        if (d > 0.0) {
            double* gh = out.centers.data() + static_cast<std::size_t>(head) * k;
            double* gt = out.centers.data() + static_cast<std::size_t>(tail) * k;
            for (int i = 0; i < k; ++i) {
                const double u = (c[i] - ct[i]) / d;
                gh[i] += weight * u;
                gt[i] -= weight * u;
            }
        }
        out.radii[head] += weight;
        out.radii[tail] -= weight;
    }
}

void accumulate_anchor_gradient(const DancarEmbedding& emb, NodeId v, double weight,
                                Gradients& out) {
    const int k = emb.dim;
    const auto c = emb.center(v);
    const auto x = emb.anchor(v);
    const double d = euclidean_distance(c, x);
    if (d > 0.0) {
        double* gc = out.centers.data() + static_cast<std::size_t>(v) * k;
        double* gx = out.anchors.data() + static_cast<std::size_t>(v) * k;
        for (int i = 0; i < k; ++i) {
            const double u = (c[i] - x[i]) / d;
            gc[i] += weight * u;
            gx[i] -= weight * u;
        }
    }
    out.radii[v] -= weight;
}

// One pass computing the batch means and, when grads != nullptr, the
// analytic gradient of the weighted total. An empty batch contributes
// zero, which is what both the combined-loss contract and the trainer's
// degenerate-input rule (e.g. a graph with no edges) need.
LossBreakdown evaluate(const DancarEmbedding& emb, std::span<const Edge> edge_batch,
                       std::span<const Edge> negative_batch, std::span<const NodeId> node_batch,
                       const Hyperparams& hp, Gradients* grads) {
    LossBreakdown out;

    if (!edge_batch.empty()) {
        const double inv = 1.0 / static_cast<double>(edge_batch.size());
        double sum = 0.0;
        for (const Edge& e : edge_batch) {
            const double pre = edge_score(emb, e.head, e.tail, hp.model) + hp.margin;
            if (pre > 0.0) {
                sum += pre;
                if (grads) accumulate_score_gradient(emb, e.head, e.tail, hp.model, inv, *grads);
            }
        }
        out.l_pos = sum * inv;
    }

    if (!negative_batch.empty()) {
        const double inv = 1.0 / static_cast<double>(negative_batch.size());
        double sum = 0.0;
        for (const Edge& e : negative_batch) {
            const double pre = -edge_score(emb, e.head, e.tail, hp.model) + hp.margin;
            if (pre > 0.0) {
                sum += pre;
                if (grads) {
                    accumulate_score_gradient(emb, e.head, e.tail, hp.model,
                                              -hp.lambda_neg * inv, *grads);
                }
            }
        }
        out.l_neg = sum * inv;
    }

    if (!node_batch.empty() && hp.model == ScoreModel::Dancar) {
        const double inv = 1.0 / static_cast<double>(node_batch.size());
        double sum = 0.0;
        for (const NodeId v : node_batch) {
            const double pre = euclidean_distance(emb.center(v), emb.anchor(v)) - emb.radii[v] +
                               hp.margin;
            if (pre > 0.0) {
                sum += pre;
                if (grads) accumulate_anchor_gradient(emb, v, hp.lambda_anc * inv, *grads);
            }
        }
        out.l_anc = sum * inv;
    }

    out.total = out.l_pos + hp.lambda_neg * out.l_neg + hp.lambda_anc * out.l_anc;
    return out;
}

}  // namespace

void Hyperparams::validate() const {
    if (!(margin >= 0.0)) throw std::invalid_argument("margin must be >= 0");
    if (!(lambda_neg >= 0.0)) throw std::invalid_argument("lambda_neg must be >= 0");
    if (!(lambda_anc >= 0.0)) throw std::invalid_argument("lambda_anc must be >= 0");
    if (b1 < 1) throw std::invalid_argument("b1 must be >= 1");
    if (b2 < 1) throw std::invalid_argument("b2 must be >= 1");
    if (!(adam_alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0)) throw std::invalid_argument("beta1 must lie in [0,1)");
    if (!(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) throw std::invalid_argument("beta2 must lie in [0,1)");
    if (!(adam_eps > 0.0)) throw std::invalid_argument("adam epsilon must be > 0");
}

double positive_loss(const DancarEmbedding& emb, std::span<const Edge> edge_batch,
                     double margin, ScoreModel model) {
    require_nonempty(edge_batch, "positive_loss");
    double sum = 0.0;
    for (const Edge& e : edge_batch) sum += relu(edge_score(emb, e.head, e.tail, model) + margin);
    return sum / static_cast<double>(edge_batch.size());
}

double negative_loss(const DancarEmbedding& emb, std::span<const Edge> pair_batch,
                     double margin, ScoreModel model) {
    require_nonempty(pair_batch, "negative_loss");
    double sum = 0.0;
    for (const Edge& e : pair_batch) sum += relu(-edge_score(emb, e.head, e.tail, model) + margin);
    return sum / static_cast<double>(pair_batch.size());
}

double anchor_loss(const DancarEmbedding& emb, std::span<const NodeId> node_batch,
                   double margin) {
    if (node_batch.empty()) throw std::invalid_argument("anchor_loss: empty batch");
    double sum = 0.0;
    for (const NodeId v : node_batch) {
        sum += relu(euclidean_distance(emb.center(v), emb.anchor(v)) - emb.radii[v] + margin);
    }
    return sum / static_cast<double>(node_batch.size());
}

LossBreakdown total_loss(const DancarEmbedding& emb, std::span<const Edge> edge_batch,
                         std::span<const Edge> negative_batch,
                         std::span<const NodeId> node_batch, const Hyperparams& hp) {
    return evaluate(emb, edge_batch, negative_batch, node_batch, hp, nullptr);
}

Gradients Gradients::zeros(std::size_t num_nodes, int dim) {
    Gradients g;
    g.anchors.assign(num_nodes * static_cast<std::size_t>(dim), 0.0);
    g.centers.assign(num_nodes * static_cast<std::size_t>(dim), 0.0);
    g.radii.assign(num_nodes, 0.0);
    return g;
}

Gradients loss_gradients(const DancarEmbedding& emb, std::span<const Edge> edge_batch,
                         std::span<const Edge> negative_batch,
                         std::span<const NodeId> node_batch, const Hyperparams& hp) {
    Gradients grads = Gradients::zeros(emb.num_nodes, emb.dim);
    evaluate(emb, edge_batch, negative_batch, node_batch, hp, &grads);
    return grads;
}

namespace detail {

// Shared by the trainer so one pass yields both the recorded loss and the
// gradient it steps along.
LossBreakdown evaluate_with_gradients(const DancarEmbedding& emb,
                                      std::span<const Edge> edge_batch,
                                      std::span<const Edge> negative_batch,
                                      std::span<const NodeId> node_batch, const Hyperparams& hp,
                                      Gradients& grads) {
    return evaluate(emb, edge_batch, negative_batch, node_batch, hp, &grads);
}

}  // namespace detail

}  // namespace dancar
