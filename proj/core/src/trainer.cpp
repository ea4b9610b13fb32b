#include "dancar/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dancar/rng.hpp"
#include "losses_detail.hpp"

namespace dancar {

AdamState AdamState::zeros(std::size_t num_nodes, int dim) {
    AdamState s;
    const std::size_t nk = num_nodes * static_cast<std::size_t>(dim);
    s.m_anchors.assign(nk, 0.0);
    s.v_anchors.assign(nk, 0.0);
    s.m_centers.assign(nk, 0.0);
    s.v_centers.assign(nk, 0.0);
    s.m_radii.assign(num_nodes, 0.0);
    s.v_radii.assign(num_nodes, 0.0);
    return s;
}

void adam_step(std::span<double> params, std::span<const double> grads, std::span<double> m,
               std::span<double> v, std::uint64_t t, double alpha, double beta1, double beta2,
               double eps, std::string_view block_name) {
    if (params.size() != grads.size() || params.size() != m.size() || params.size() != v.size()) {
        throw std::invalid_argument("adam_step: parameter/gradient/state shapes disagree");
    }
    if (t == 0) throw std::invalid_argument("adam_step: step counter must be >= 1");

    const double bias1 = 1.0 - std::pow(beta1, static_cast<double>(t));
    const double bias2 = 1.0 - std::pow(beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        if (!std::isfinite(g)) {
            throw std::runtime_error("non-finite gradient in parameter block '" +
                                     std::string(block_name) + "'");
        }
        m[i] = beta1 * m[i] + (1.0 - beta1) * g;
        v[i] = beta2 * v[i] + (1.0 - beta2) * g * g;
        const double m_hat = m[i] / bias1;
        const double v_hat = v[i] / bias2;
        params[i] -= alpha * m_hat / (std::sqrt(v_hat) + eps);
    }
}

DancarEmbedding init_embedding(const DirectedGraph& g, int dim, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("embedding dimension must be >= 1");
    DancarEmbedding emb = DancarEmbedding::zeros(g.num_nodes(), dim);
    std::mt19937_64 rng(seed);
    for (double& c : emb.centers) c = uniform_in(rng, -1.0, 1.0);
    emb.anchors = emb.centers;
    std::fill(emb.radii.begin(), emb.radii.end(), 0.1);
    return emb;
}

Trainer::Trainer(const DirectedGraph& g, const Hyperparams& hp, int dim)
    : graph_(&g),
      hp_(hp),
      emb_(init_embedding(g, dim, hp.seed)),
      adam_(AdamState::zeros(g.num_nodes(), dim)),
      grads_(Gradients::zeros(g.num_nodes(), dim)),
      rng_(splitmix64(hp.seed ^ 0xD1B54A32D192ED03ull)) {
    hp_.validate();
    if (g.empty()) throw std::invalid_argument("cannot train on an empty graph");
    if (hp_.model == ScoreModel::Disk) hp_.lambda_anc = 0.0;  // baseline has no anchors
    if (hp_.lambda_neg > 0.0) {
        negatives_ = std::make_unique<NegativeSampler>(g, hp_.negative_mode);
    }
    all_nodes_.resize(g.num_nodes());
    for (std::size_t v = 0; v < g.num_nodes(); ++v) all_nodes_[v] = static_cast<NodeId>(v);
}

Trainer::~Trainer() = default;
Trainer::Trainer(Trainer&&) noexcept = default;
Trainer& Trainer::operator=(Trainer&&) noexcept = default;

void Trainer::step() {
    const auto start = std::chrono::steady_clock::now();
    const DirectedGraph& g = *graph_;

    // Positive batch: the full edge set when it fits into b1, otherwise
    // b1 uniform draws with replacement.
    std::span<const Edge> edge_batch;
    if (g.num_edges() > 0 && g.num_edges() <= hp_.b1) {
        edge_batch = g.edges();
    } else if (g.num_edges() > 0) {
        edge_batch_.clear();
        for (std::size_t i = 0; i < hp_.b1; ++i) {
            edge_batch_.push_back(g.edges()[uniform_below(rng_, g.num_edges())]);
        }
        edge_batch = edge_batch_;
    }

    // Anchor batch, same rule over nodes.
    std::span<const NodeId> node_batch;
    if (hp_.lambda_anc > 0.0) {
        if (g.num_nodes() <= hp_.b1) {
            node_batch = all_nodes_;
        } else {
            node_batch_.clear();
            for (std::size_t i = 0; i < hp_.b1; ++i) {
                node_batch_.push_back(static_cast<NodeId>(uniform_below(rng_, g.num_nodes())));
            }
            node_batch = node_batch_;
        }
    }

    // Fresh negatives every iteration.
    std::span<const Edge> negative_batch;
    if (negatives_) {
        negatives_->sample(rng_, hp_.b2, negative_batch_);
        negative_batch = negative_batch_;
    }

    std::fill(grads_.anchors.begin(), grads_.anchors.end(), 0.0);
    std::fill(grads_.centers.begin(), grads_.centers.end(), 0.0);
    std::fill(grads_.radii.begin(), grads_.radii.end(), 0.0);
    const LossBreakdown loss =
        detail::evaluate_with_gradients(emb_, edge_batch, negative_batch, node_batch, hp_, grads_);

    ++adam_.t;
    adam_step(emb_.anchors, grads_.anchors, adam_.m_anchors, adam_.v_anchors, adam_.t,
              hp_.adam_alpha, hp_.adam_beta1, hp_.adam_beta2, hp_.adam_eps, "anchors");
    adam_step(emb_.centers, grads_.centers, adam_.m_centers, adam_.v_centers, adam_.t,
              hp_.adam_alpha, hp_.adam_beta1, hp_.adam_beta2, hp_.adam_eps, "centers");
    adam_step(emb_.radii, grads_.radii, adam_.m_radii, adam_.v_radii, adam_.t, hp_.adam_alpha,
              hp_.adam_beta1, hp_.adam_beta2, hp_.adam_eps, "radii");
    for (double& r : emb_.radii) r = std::max(r, DancarEmbedding::kMinRadius);

    history_.push_back(loss);
    step_seconds_.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

void Trainer::run(std::size_t iterations) {
    for (std::size_t i = 0; i < iterations; ++i) step();
}

TrainReport Trainer::take_report() && {
    TrainReport report;
    report.history = std::move(history_);
    report.step_seconds = std::move(step_seconds_);
    report.embedding = std::move(emb_);
    report.seed = hp_.seed;
    return report;
}

TrainReport train(const DirectedGraph& g, const Hyperparams& hp, int dim) {
    Trainer trainer(g, hp, dim);
    trainer.run(hp.iterations);
    return std::move(trainer).take_report();
}

}  // namespace dancar
