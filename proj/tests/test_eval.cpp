#include "dancar/eval.hpp"

#include <doctest.h>

#include <cmath>

#include "dancar/analytic.hpp"
#include "support/generators.hpp"

using namespace dancar;

TEST_CASE("reconstruction_report on a perfect cycle embedding") {
    const DirectedGraph g = testgen::directed_cycle(3);
    // Hand-built exact embedding: anchor of (v+1) inside disk of v only.
    DancarEmbedding emb = DancarEmbedding::zeros(3, 2);
    const double angles[3] = {0.0, 2.0, 4.0};
    for (NodeId v = 0; v < 3; ++v) {
        emb.anchor(v)[0] = std::cos(angles[v]);
        emb.anchor(v)[1] = std::sin(angles[v]);
    }
    for (NodeId v = 0; v < 3; ++v) {
        const NodeId next = (v + 1) % 3;
        // center sits on the successor's anchor with a snug radius
        emb.center(v)[0] = emb.anchor(next)[0];
        emb.center(v)[1] = emb.anchor(next)[1];
        emb.radii[v] = 0.2;
    }
    const EvalReport r = reconstruction_report(g, emb);
    CHECK(r.precision == doctest::Approx(1.0));
    CHECK(r.recall == doctest::Approx(1.0));
    CHECK(r.f1 == doctest::Approx(1.0));
    CHECK(r.true_positives == 3);
}

TEST_CASE("reconstruction_report confusion arithmetic") {
    // Graph has edges {(0,1),(0,2)}; the embedding predicts {(0,1),(1,2)}.
    const DirectedGraph g(3, {{0, 1}, {0, 2}});
    DancarEmbedding emb = DancarEmbedding::zeros(3, 2);
    emb.anchor(1)[0] = 1.0;
    emb.anchor(2)[0] = 9.0;
    emb.center(0)[0] = 1.0;
    emb.radii[0] = 0.1;  // holds x_1 only
    emb.center(1)[0] = 9.0;
    emb.radii[1] = 0.1;  // holds x_2
    emb.center(2)[0] = -9.0;
    emb.radii[2] = 0.1;  // holds nothing
    const EvalReport r = reconstruction_report(g, emb);
    CHECK(r.true_positives == 1);
    CHECK(r.false_positives == 1);
    CHECK(r.false_negatives == 1);
    CHECK(r.precision == doctest::Approx(0.5));
    CHECK(r.recall == doctest::Approx(0.5));
    CHECK(r.f1 == doctest::Approx(0.5));
}

TEST_CASE("empty predictions give zero precision by convention") {
    const DirectedGraph g(3, {{0, 1}});
    DancarEmbedding emb = DancarEmbedding::zeros(3, 2);
    for (NodeId v = 0; v < 3; ++v) {
        emb.center(v)[0] = 100.0 + 50.0 * v;  // disks far away from anchors
        emb.radii[v] = 0.001;
    }
    emb.anchor(1)[0] = 1.0;
    emb.anchor(2)[0] = 2.0;
    const EvalReport r = reconstruction_report(g, emb);
    CHECK(r.true_positives == 0);
    CHECK(r.precision == 0.0);
    CHECK(r.recall == 0.0);
    CHECK(r.f1 == 0.0);
}

TEST_CASE("reconstruction_report rejects node mismatch") {
    const DirectedGraph g(3, {{0, 1}});
    const DancarEmbedding emb = DancarEmbedding::zeros(2, 2);
    CHECK_THROWS_AS(reconstruction_report(g, emb), std::invalid_argument);
}

TEST_CASE("reconstruction_report is invariant under node relabeling") {
    std::mt19937_64 rng(91);
    const DirectedGraph g = testgen::random_graph(12, 30, rng);
    const DancarEmbedding emb = testgen::random_embedding(12, 3, rng);

    // permutation: v -> (v*5 + 3) mod 12 (5 coprime to 12)
    std::vector<NodeId> perm(12);
    for (NodeId v = 0; v < 12; ++v) perm[v] = static_cast<NodeId>((v * 5 + 3) % 12);

    std::vector<Edge> mapped_edges;
    for (const Edge& e : g.edges()) mapped_edges.push_back({perm[e.head], perm[e.tail]});
    const DirectedGraph pg(12, std::move(mapped_edges));

    DancarEmbedding pemb = DancarEmbedding::zeros(12, 3);
    for (NodeId v = 0; v < 12; ++v) {
        std::copy_n(emb.anchor(v).begin(), 3, pemb.anchor(perm[v]).begin());
        std::copy_n(emb.center(v).begin(), 3, pemb.center(perm[v]).begin());
        pemb.radii[perm[v]] = emb.radii[v];
    }

    const EvalReport a = reconstruction_report(g, emb);
    const EvalReport b = reconstruction_report(pg, pemb);
    CHECK(a.true_positives == b.true_positives);
    CHECK(a.false_positives == b.false_positives);
    CHECK(a.false_negatives == b.false_negatives);
}

TEST_CASE("link_prediction_report") {
    std::mt19937_64 rng(92);
    const DirectedGraph full = testgen::random_graph(10, 30, rng);
    const DancarEmbedding emb = testgen::random_embedding(10, 2, rng);

    SUBCASE("train == full degenerates to reconstruction") {
        const EvalReport lp = link_prediction_report(full, full, emb);
        const EvalReport rec = reconstruction_report(full, emb);
        CHECK(lp.true_positives == rec.true_positives);
        CHECK(lp.false_positives == rec.false_positives);
        CHECK(lp.false_negatives == rec.false_negatives);
    }
    SUBCASE("train must be a subset of full") {
        const DirectedGraph train(10, {{0, 1}, {1, 0}, {2, 3}, {3, 4}, {4, 5}});
        bool subset = true;
        for (const Edge& e : train.edges()) {
            if (!full.has_edge(e.head, e.tail)) subset = false;
        }
        if (!subset) {
            CHECK_THROWS_AS(link_prediction_report(full, train, emb), std::invalid_argument);
        }
    }
    SUBCASE("recall counts held-out edges as positives") {
        // Embedding reconstructing exactly the train half of a 10-edge graph.
        std::vector<Edge> edges;
        for (NodeId i = 0; i < 10; ++i) edges.push_back({i, static_cast<NodeId>((i + 1) % 11)});
        const DirectedGraph whole(11, std::move(edges));
        const EdgeSplit split = split_edges(whole, 0.5, 7);

        DancarEmbedding exact = DancarEmbedding::zeros(11, 2);
        for (NodeId v = 0; v < 11; ++v) {
            exact.anchor(v)[0] = 3.0 * v;
            exact.center(v)[0] = -100.0;
            exact.radii[v] = 0.1;
        }
        for (const Edge& e : split.train.edges()) {
            exact.center(e.head)[0] = exact.anchor(e.tail)[0];  // snap onto the tail anchor
        }
        const EvalReport lp = link_prediction_report(whole, split.train, exact);
        CHECK(lp.true_positives == 5);
        CHECK(lp.false_negatives == 5);
        CHECK(lp.recall == doctest::Approx(0.5));
        CHECK(lp.precision == doctest::Approx(1.0));
    }
}

TEST_CASE("map_score perfect ranking") {
    const DirectedGraph g(4, {{0, 1}, {0, 2}, {1, 3}});
    const auto oracle = [&](NodeId v, NodeId w) { return g.has_edge(v, w) ? -1.0 : 1.0; };
    CHECK(map_score(g, oracle) == doctest::Approx(1.0));
}

TEST_CASE("map_score hand-computed average precision") {
    // One node with out-neighbors; true neighbor ranked 2nd of 3.
    const DirectedGraph g(4, {{0, 2}});
    const auto ranker = [](NodeId, NodeId w) { return static_cast<double>(w); };
    // candidates of node 0 by score: 1 (rank 1), 2 (rank 2), 3 (rank 3)
    CHECK(map_score(g, ranker) == doctest::Approx(0.5));
}

TEST_CASE("map_score is invariant under strictly increasing transforms") {
    std::mt19937_64 rng(93);
    const DirectedGraph g = testgen::random_graph(9, 20, rng);
    const DancarEmbedding emb = testgen::random_embedding(9, 2, rng);
    const auto base = [&](NodeId v, NodeId w) { return score(emb, v, w); };
    const auto shifted = [&](NodeId v, NodeId w) { return 3.0 * score(emb, v, w) + 10.0; };
    CHECK(map_score(g, base) == doctest::Approx(map_score(g, shifted)));
}

TEST_CASE("map_score in-direction ranks predecessors") {
    const DirectedGraph g(3, {{1, 0}, {2, 0}});
    // score(u, v): candidate heads u for tail v; make node 1 rank first.
    const auto ranker = [](NodeId u, NodeId) { return static_cast<double>(u); };
    // node 0 truth = {1,2}: candidates {1,2} ranked (1,2) -> AP = 1
    CHECK(map_score(g, ranker, MapDirection::In) == doctest::Approx(1.0));
}

TEST_CASE("map_score rejects graphs without neighbors") {
    const DirectedGraph g(3, {});
    const auto ranker = [](NodeId, NodeId) { return 0.0; };
    CHECK_THROWS_AS(map_score(g, ranker), std::invalid_argument);
}

TEST_CASE("spearman hand values") {
    const std::vector<double> xs{1, 2, 3, 4};
    CHECK(spearman(xs, std::vector<double>{1, 2, 3, 4}) == doctest::Approx(1.0));
    CHECK(spearman(xs, std::vector<double>{4, 3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(spearman(xs, std::vector<double>{1, 3, 2, 4}) == doctest::Approx(0.8));
    CHECK(spearman(xs, std::vector<double>{10, 30, 20, 40}) == doctest::Approx(0.8));  // rank-only
}

TEST_CASE("spearman averages tied ranks") {
    // xs has a tie; ranks (1.5, 1.5, 3) vs ys ranks (1, 2, 3)
    const std::vector<double> xs{5, 5, 9};
    const std::vector<double> ys{1, 2, 3};
    const double rho = spearman(xs, ys);
    // Pearson of (1.5,1.5,3) and (1,2,3) = (3/2) / sqrt(1.5*2) = 0.8660...
    CHECK(rho == doctest::Approx(std::sqrt(3.0) / 2.0));
}

TEST_CASE("spearman error cases") {
    CHECK_THROWS_AS(spearman(std::vector<double>{1, 2}, std::vector<double>{1}), std::invalid_argument);
    CHECK_THROWS_AS(spearman(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
    CHECK_THROWS_AS(spearman(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3}),
                    std::invalid_argument);
}

TEST_CASE("f1 is 1 exactly when the edge sets match") {
    const DirectedGraph tree = testgen::perfect_tree(2, 3);
    const DancarEmbedding emb = embed_tree(tree, 0);
    const EvalReport r = reconstruction_report(tree, emb);
    if (r.f1 == 1.0) {
        CHECK(reconstruct_edges(emb) == tree.edges());
    }
    CHECK((r.f1 == 1.0) == (r.false_positives == 0 && r.false_negatives == 0));
}
