// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. argv[1] must point at the dancar CLI binary (used
// by the determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dancar/analytic.hpp"
#include "dancar/embedding.hpp"
#include "dancar/eval.hpp"
#include "dancar/graph.hpp"
#include "dancar/io.hpp"
#include "dancar/losses.hpp"
#include "dancar/rng.hpp"
#include "dancar/trainer.hpp"
#include "dancar/viz.hpp"
#include "support/finite_diff.hpp"
#include "support/generators.hpp"
#include "support/xml_check.hpp"

using namespace dancar;
namespace fs = std::filesystem;

namespace {

std::string g_cli_path;

struct Criterion {
    int number;
    const char* name;
    std::function<bool(std::string&)> run;
};

bool expect(bool condition, const std::string& detail, std::string& message) {
    if (!condition && message.empty()) message = detail;
    return condition;
}

// 1. analytic gradients vs central finite differences ---------------------
bool gradient_correctness(std::string& msg) {
    std::mt19937_64 rng(1001);
    const std::vector<int> dims{2, 5, 10};
    int done = 0;
    int attempts = 0;
    while (done < 100 && attempts < 1000) {
        ++attempts;
        const int k = dims[static_cast<std::size_t>(done) % dims.size()];
        const DancarEmbedding emb = testgen::random_embedding(10, k, rng);
        Hyperparams hp;
        hp.margin = 0.01;
        hp.lambda_neg = uniform_in(rng, 0.5, 8.0);
        hp.lambda_anc = uniform_in(rng, 0.5, 2.0);

        std::vector<Edge> pos, neg;
        std::vector<NodeId> nodes;
        for (int i = 0; i < 10; ++i) {
            const auto a = static_cast<NodeId>(uniform_below(rng, 10));
            auto b = static_cast<NodeId>(uniform_below(rng, 9));
            if (b >= a) ++b;
            (i % 2 == 0 ? pos : neg).push_back({a, b});
        }
        for (NodeId v = 0; v < 6; ++v) nodes.push_back(v);

        if (testgen::min_preactivation_magnitude(emb, pos, neg, nodes, hp) <= 1e-3) continue;

        const Gradients analytic = loss_gradients(emb, pos, neg, nodes, hp);
        const Gradients fd = testgen::finite_difference_gradients(emb, pos, neg, nodes, hp, 1e-5);
        auto ok = [&](const std::vector<double>& a, const std::vector<double>& f,
                      const char* block) {
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double rel = std::abs(a[i] - f[i]) / std::max({1.0, std::abs(a[i]), std::abs(f[i])});
                if (rel > 1e-5) {
                    msg = std::string("config ") + std::to_string(done) + " block " + block +
                          " rel err " + std::to_string(rel);
                    return false;
                }
            }
            return true;
        };
        if (!ok(analytic.anchors, fd.anchors, "anchors") ||
            !ok(analytic.centers, fd.centers, "centers") ||
            !ok(analytic.radii, fd.radii, "radii")) {
            return false;
        }
        ++done;
    }
    return expect(done == 100, "only validated " + std::to_string(done) + " configurations", msg);
}

// 2. every directed cycle C_3..C_10 embeds with F1 = 1 ---------------------
bool cycle_fidelity(std::string& msg) {
    for (std::size_t n = 3; n <= 10; ++n) {
        const DirectedGraph cycle = testgen::directed_cycle(n);
        bool solved = false;
        for (std::uint64_t seed = 0; seed < 3 && !solved; ++seed) {
            Hyperparams hp;
            hp.margin = 0.01;
            hp.lambda_neg = 8.0;
            hp.lambda_anc = 1.0;
            hp.negative_mode = NegativeMode::Exact;
            hp.b2 = 256;
            hp.seed = seed;
            Trainer trainer(cycle, hp, 2);
            for (int block = 0; block < 20 && !solved; ++block) {
                trainer.run(250);  // 20 * 250 = 5000 iteration budget
                const EvalReport r = reconstruction_report(cycle, trainer.embedding());
                solved = r.f1 == 1.0;
            }
        }
        if (!expect(solved, "C_" + std::to_string(n) + " did not reach F1 = 1.0", msg)) {
            return false;
        }
    }
    return true;
}

// 3. Algorithm-1 tree embedding is exact ----------------------------------
bool tree_exactness(std::string& msg) {
    for (const int arity : {1, 2, 3}) {
        for (int depth = 1; depth <= 5; ++depth) {
            const DirectedGraph tree = testgen::perfect_tree(arity, depth);
            const DancarEmbedding emb = embed_tree(tree, 0);
            const TreeLayoutConstants c = tree_layout_constants(arity);
            for (const Edge& e : tree.edges()) {
                const double d = euclidean_distance(emb.center(e.head), emb.anchor(e.tail));
                if (!expect(d < emb.radii[e.head],
                            "recall guarantee violated (k_scale >= 1?)", msg)) {
                    return false;
                }
                (void)c;
            }
            const EvalReport r = reconstruction_report(tree, emb);
            if (!expect(r.recall == 1.0, "recall < 1 on m=" + std::to_string(arity), msg)) {
                return false;
            }
            if (arity == 3 && depth == 5) {
                if (!expect(r.f1 == 1.0, "ternary depth-5 F1 != 1.0", msg)) return false;
            }
        }
    }
    return true;
}

// 4. Poincare conversion equivalence ---------------------------------------
bool poincare_equivalence(std::string& msg) {
    std::mt19937_64 rng(4004);
    for (const int k : {2, 5, 10}) {
        for (int trial = 0; trial < 1000; ++trial) {
            const auto a = testgen::random_ball_point(k, rng);
            const auto x = testgen::random_ball_point(k, rng);
            const double r = uniform_in(rng, 0.05, 3.0);
            const double gap = poincare_distance(a, x) - r;
            if (std::abs(gap) <= 1e-9) continue;
            const EuclideanBall ball = poincare_ball_to_euclidean(a, r);
            const double egap = euclidean_distance(x, ball.center) - ball.radius;
            if (!expect((gap > 0.0) == (egap > 0.0),
                        "membership disagreement at k=" + std::to_string(k), msg)) {
                return false;
            }
        }
    }

    const double epsilon = 0.7;
    std::vector<std::vector<double>> points;
    for (int i = 0; i < 50; ++i) points.push_back(testgen::random_ball_point(2, rng));
    const DancarEmbedding emb = import_poincare(points, epsilon);

    std::vector<Edge> expected;
    for (NodeId v = 0; v < 50; ++v) {
        for (NodeId w = 0; w < 50; ++w) {
            if (v != w && poincare_distance(points[v], points[w]) <= epsilon) {
                expected.push_back({v, w});
            }
        }
    }
    const DirectedGraph truth(50, std::move(expected));
    const EvalReport r = reconstruction_report(truth, emb);
    return expect(r.f1 == 1.0, "threshold-graph reconstruction F1 != 1.0", msg);
}

// 5. desk-scale stand-in for the large reconstruction table ---------------
bool scaled_reconstruction(std::string& msg) {
    std::mt19937_64 rng(5005);
    const DirectedGraph dag = testgen::random_dag(100, 0.04, rng);
    const DirectedGraph closure = transitive_closure(dag);

    for (const double lambda_neg : {8.0, 100.0}) {
        Hyperparams hp;
        hp.margin = 0.01;
        hp.lambda_neg = lambda_neg;
        hp.lambda_anc = 1.0;
        hp.negative_mode = NegativeMode::Exact;
        hp.b2 = 4096;
        hp.seed = 11;
        Trainer trainer(closure, hp, 10);
        for (int block = 0; block < 20; ++block) {
            trainer.run(1000);  // <= 20000 iterations
            const EvalReport r = reconstruction_report(closure, trainer.embedding());
            if (r.f1 >= 0.99) return true;
        }
    }
    msg = "no lambda_neg in {8,100} reached F1 >= 0.99 within 20000 iterations";
    return false;
}

// 6. link prediction with the full training fraction ------------------------
bool link_protocol_integrity(std::string& msg) {
    std::mt19937_64 rng(6006);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 8 + trial % 7;
        const DirectedGraph g = testgen::random_graph(n, 2 * n, rng);
        const EdgeSplit split = split_edges(g, 1.0, trial);
        if (!expect(split.train.edges() == g.edges() && split.held_out.empty(),
                    "full-fraction split is not the identity", msg)) {
            return false;
        }
        const DancarEmbedding emb = testgen::random_embedding(n, 3, rng);
        const EvalReport lp = link_prediction_report(g, split.train, emb);
        const EvalReport rec = reconstruction_report(g, emb);
        if (!expect(lp.true_positives == rec.true_positives &&
                        lp.false_positives == rec.false_positives &&
                        lp.false_negatives == rec.false_negatives,
                    "link-prediction and reconstruction reports differ", msg)) {
            return false;
        }
    }
    return true;
}

// 7. isometry invariance and positive homogeneity --------------------------
bool invariance_suite(std::string& msg) {
    std::mt19937_64 rng(7007);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = std::vector<int>{2, 3, 5}[trial % 3];
        const DancarEmbedding emb = testgen::random_embedding(10, k, rng);
        Hyperparams hp;
        hp.margin = 0.01;
        hp.lambda_neg = 2.0;
        hp.lambda_anc = 1.0;
        std::vector<Edge> pos{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
        std::vector<Edge> neg{{1, 0}, {3, 2}, {8, 9}};
        std::vector<NodeId> nodes{0, 1, 2, 3, 4};

        const auto rotation = testgen::random_rotation(k, rng);
        std::vector<double> shift(k);
        for (double& s : shift) s = uniform_in(rng, -5.0, 5.0);
        const DancarEmbedding moved = testgen::apply_rigid_motion(emb, rotation, shift);

        const LossBreakdown base = total_loss(emb, pos, neg, nodes, hp);
        const LossBreakdown iso = total_loss(moved, pos, neg, nodes, hp);
        if (!expect(std::abs(base.total - iso.total) <= 1e-12 &&
                        std::abs(base.l_pos - iso.l_pos) <= 1e-12 &&
                        std::abs(base.l_neg - iso.l_neg) <= 1e-12 &&
                        std::abs(base.l_anc - iso.l_anc) <= 1e-12,
                    "isometry drift above 1e-12", msg)) {
            return false;
        }
        if (!expect(reconstruct_edges(emb) == reconstruct_edges(moved),
                    "edge set changed under isometry", msg)) {
            return false;
        }

        const double s = uniform_in(rng, 0.2, 5.0);
        const DancarEmbedding scaled = testgen::scale_embedding(emb, s);
        Hyperparams hp_scaled = hp;
        hp_scaled.margin = s * hp.margin;
        const LossBreakdown homog = total_loss(scaled, pos, neg, nodes, hp_scaled);
        const double tol = 1e-12 * std::max(1.0, s * base.total);
        if (!expect(std::abs(homog.total - s * base.total) <= tol,
                    "homogeneity violated", msg)) {
            return false;
        }
        if (!expect(reconstruct_edges(emb) == reconstruct_edges(scaled),
                    "edge set changed under scaling", msg)) {
            return false;
        }
    }
    return true;
}

// 8. CLI determinism ---------------------------------------------------------
bool cli_determinism(std::string& msg) {
    const fs::path dir = fs::temp_directory_path() / "dancar_acceptance";
    fs::create_directories(dir);
    const fs::path edges = dir / "cycle.txt";
    {
        std::ofstream out(edges);
        out << "a b\nb c\nc d\nd a\n";
    }
    auto run = [&](const fs::path& emb) {
        const std::string cmd = g_cli_path + " train " + edges.string() +
                                " --dim 2 --iterations 200 --seed 7 --negative-mode exact" +
                                " --b2 64 --out " + emb.string() + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const fs::path emb1 = dir / "run1.emb";
    const fs::path emb2 = dir / "run2.emb";
    if (!expect(run(emb1) == 0 && run(emb2) == 0, "cli train failed", msg)) return false;

    std::ifstream f1(emb1, std::ios::binary), f2(emb2, std::ios::binary);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    return expect(!s1.str().empty() && s1.str() == s2.str(),
                  "embedding files differ between identical runs", msg);
}

// 9. mAP sanity ---------------------------------------------------------------
bool map_sanity(std::string& msg) {
    const DirectedGraph g(4, {{0, 1}, {0, 2}, {1, 3}});
    const auto oracle = [&](NodeId v, NodeId w) { return g.has_edge(v, w) ? -1.0 : 1.0; };
    if (!expect(map_score(g, oracle) == 1.0, "perfect ranking mAP != 1", msg)) return false;

    const DirectedGraph single(4, {{0, 2}});
    const auto ranker = [](NodeId, NodeId w) { return static_cast<double>(w); };
    const double ap = map_score(single, ranker);
    return expect(ap == 0.5, "hand-computed AP case returned " + std::to_string(ap), msg);
}

// 10. SVG contract -------------------------------------------------------------
bool svg_contract(std::string& msg) {
    const DirectedGraph tree = testgen::perfect_tree(3, 5);
    const DancarEmbedding emb = embed_tree(tree, 0);
    const std::string svg = render_svg(emb, &tree, RenderOptions{});
    if (!expect(testgen::xml_well_formed(svg), "SVG is not well-formed XML", msg)) return false;
    const std::size_t circles = testgen::count_elements(svg, "circle");
    return expect(circles == 364,
                  "expected 364 circle elements, found " + std::to_string(circles), msg);
}

}  // namespace

int main(int argc, char** argv) {
    g_cli_path = argc > 1 ? argv[1] : "./tools/dancar";

    const std::vector<Criterion> criteria{
        {1, "gradient correctness vs finite differences", gradient_correctness},
        {2, "directed-cycle fidelity C_3..C_10", cycle_fidelity},
        {3, "tree embedding exactness", tree_exactness},
        {4, "poincare ball conversion equivalence", poincare_equivalence},
        {5, "scaled reconstruction F1 >= 0.99", scaled_reconstruction},
        {6, "link-prediction protocol integrity", link_protocol_integrity},
        {7, "isometry invariance and homogeneity", invariance_suite},
        {8, "cli train determinism", cli_determinism},
        {9, "mAP sanity", map_sanity},
        {10, "svg contract", svg_contract},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string message;
        bool ok = false;
        try {
            ok = c.run(message);
        } catch (const std::exception& e) {
            message = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.number,
                    c.name, secs, message.empty() ? "" : " -- ", message.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
