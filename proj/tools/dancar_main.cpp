// dancar: train, evaluate and visualize anchored-disk embeddings of
// directed graphs from edge-list files.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include "dancar/analytic.hpp"
#include "dancar/embedding.hpp"
#include "dancar/eval.hpp"
#include "dancar/graph.hpp"
#include "dancar/io.hpp"
#include "dancar/losses.hpp"
#include "dancar/trainer.hpp"
#include "dancar/viz.hpp"

namespace {

using namespace dancar;

std::string fmt(double x, const char* spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, x);
    return buf;
}

void print_report(const EvalReport& r) {
    std::cout << "tp=" << r.true_positives << "\n"
              << "fp=" << r.false_positives << "\n"
              << "fn=" << r.false_negatives << "\n"
              << "precision=" << fmt(r.precision) << "\n"
              << "recall=" << fmt(r.recall) << "\n"
              << "f1=" << fmt(r.f1) << "\n";
    if (r.map) std::cout << "map=" << fmt(*r.map) << "\n";
    if (r.spearman) std::cout << "spearman_radius_outdegree=" << fmt(*r.spearman) << "\n";

    std::cout << "RESULT precision=" << fmt(r.precision, "%.17g")
              << " recall=" << fmt(r.recall, "%.17g") << " f1=" << fmt(r.f1, "%.17g");
    if (r.map) std::cout << " map=" << fmt(*r.map, "%.17g");
    if (r.spearman) std::cout << " spearman=" << fmt(*r.spearman, "%.17g");
    std::cout << "\n";
}

// Reorders embedding rows (matched by label) into the graph's id order.
DancarEmbedding align_to_graph(const EmbeddingFile& file, const DirectedGraph& g) {
    if (file.labels.size() != g.num_nodes()) {
        throw std::runtime_error("embedding has " + std::to_string(file.labels.size()) +
                                 " nodes but the graph has " + std::to_string(g.num_nodes()));
    }
    DancarEmbedding out = DancarEmbedding::zeros(g.num_nodes(), file.embedding.dim);
    for (std::size_t row = 0; row < file.labels.size(); ++row) {
        const auto id = g.node_by_label(file.labels[row]);
        if (!id) {
            throw std::runtime_error("embedding node '" + file.labels[row] +
                                     "' does not appear in the graph");
        }
        const auto src = static_cast<NodeId>(row);
        std::copy_n(file.embedding.anchor(src).begin(), file.embedding.dim,
                    out.anchor(*id).begin());
        std::copy_n(file.embedding.center(src).begin(), file.embedding.dim,
                    out.center(*id).begin());
        out.radii[*id] = file.embedding.radii[src];
    }
    return out;
}

std::optional<double> radius_outdegree_spearman(const DirectedGraph& g,
                                                const DancarEmbedding& emb) {
    std::vector<double> radii(emb.radii.begin(), emb.radii.end());
    std::vector<double> degrees(g.num_nodes());
    for (std::size_t v = 0; v < g.num_nodes(); ++v) {
        degrees[v] = static_cast<double>(g.out_degree(static_cast<NodeId>(v)));
    }
    try {
        return spearman(radii, degrees);
    } catch (const std::invalid_argument&) {
        return std::nullopt;  // constant radii or degrees
    }
}

struct CommonFlags {
    int threads = 0;
    std::string baseline = "dancar";
    std::string scan = "auto";

    ScoreModel model() const {
        return baseline == "disk" ? ScoreModel::Disk : ScoreModel::Dancar;
    }
    ScanStrategy strategy() const {
        if (scan == "brute") return ScanStrategy::BruteForce;
        if (scan == "grid") return ScanStrategy::Grid;
        return ScanStrategy::Auto;
    }
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--threads", f.threads, "Worker threads for all-pairs scans (0 = auto)");
    cmd->add_option("--baseline", f.baseline, "Scoring model: dancar or disk")
        ->check(CLI::IsMember({"dancar", "disk"}));
    cmd->add_option("--scan", f.scan, "All-pairs scan strategy")
        ->check(CLI::IsMember({"auto", "brute", "grid"}));
}

struct TrainArgs {
    std::string edges_path;
    std::string config_path;
    std::string out_path;
    std::string log_path;
    CommonFlags common;
    int dim = 10;
    bool iterations_given = false;
    Hyperparams hp;
    std::string negative_mode = "approximate";
};

// Flat key/value config: one "key value" or "key=value" per line, '#'
// comments. Keys mirror the train flags; flags given on the command line
// win over file values.
void apply_config_file(TrainArgs& a, const CLI::App* cmd) {
    std::ifstream in(a.config_path);
    if (!in) throw std::runtime_error("cannot open config file: " + a.config_path);

    const auto given = [&](const std::string& flag) { return cmd->count(flag) > 0; };
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::replace(line.begin(), line.end(), '=', ' ');
        std::istringstream ls(line);
        std::string key, value, extra;
        if (!(ls >> key)) continue;
        if (key.front() == '#') continue;
        if (!(ls >> value) || (ls >> extra)) {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected \"key value\"");
        }
        std::replace(key.begin(), key.end(), '-', '_');

        auto as_real = [&] { return std::stod(value); };
        auto as_count = [&] { return static_cast<std::size_t>(std::stoull(value)); };
        try {
            if (key == "dim") {
                if (!given("--dim")) a.dim = static_cast<int>(std::stol(value));
            } else if (key == "iterations") {
                if (!given("--iterations")) a.hp.iterations = as_count();
                a.iterations_given = true;
            } else if (key == "seed") {
                if (!given("--seed")) a.hp.seed = std::stoull(value);
            } else if (key == "margin") {
                if (!given("--margin")) a.hp.margin = as_real();
            } else if (key == "lambda_neg") {
                if (!given("--lambda-neg")) a.hp.lambda_neg = as_real();
            } else if (key == "lambda_anc") {
                if (!given("--lambda-anc")) a.hp.lambda_anc = as_real();
            } else if (key == "b1") {
                if (!given("--b1")) a.hp.b1 = as_count();
            } else if (key == "b2") {
                if (!given("--b2")) a.hp.b2 = as_count();
            } else if (key == "alpha") {
                if (!given("--alpha")) a.hp.adam_alpha = as_real();
            } else if (key == "beta1") {
                if (!given("--beta1")) a.hp.adam_beta1 = as_real();
            } else if (key == "beta2") {
                if (!given("--beta2")) a.hp.adam_beta2 = as_real();
            } else if (key == "negative_mode") {
                if (value != "exact" && value != "approximate") {
                    throw std::runtime_error("negative_mode must be exact or approximate");
                }
                if (!given("--negative-mode")) a.negative_mode = value;
            } else if (key == "baseline") {
                if (value != "dancar" && value != "disk") {
                    throw std::runtime_error("baseline must be dancar or disk");
                }
                if (!given("--baseline")) a.common.baseline = value;
            } else if (key == "threads") {
                if (!given("--threads")) a.common.threads = static_cast<int>(std::stol(value));
            } else {
                throw std::runtime_error("unknown config key: " + key);
            }
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": bad value for key '" + key + "'");
        }
    }
}

int run_train(TrainArgs& a, const CLI::App* cmd) {
    if (!a.config_path.empty()) apply_config_file(a, cmd);
    if (cmd->count("--iterations") > 0) a.iterations_given = true;
    if (!a.iterations_given) {
        throw std::runtime_error(
            "missing config key: iterations (set --iterations or add it to the config file)");
    }
    Hyperparams hp = a.hp;
    hp.negative_mode =
        a.negative_mode == "exact" ? NegativeMode::Exact : NegativeMode::Approximate;
    hp.model = a.common.model();
    hp.validate();

    const DirectedGraph g = load_edge_list(a.edges_path);
    std::cerr << "training on " << g.num_nodes() << " nodes / " << g.num_edges() << " edges, k="
              << a.dim << ", " << hp.iterations << " iterations\n";
    TrainReport report = train(g, hp, a.dim);

    save_embedding(a.out_path, report.embedding, g.labels());
    if (!a.log_path.empty()) {
        std::ofstream log(a.log_path);
        if (!log) throw std::runtime_error("cannot write loss log: " + a.log_path);
        log << "iter,l_pos,l_neg,l_anc,total\n";
        for (std::size_t i = 0; i < report.history.size(); ++i) {
            const LossBreakdown& l = report.history[i];
            log << i << ',' << fmt(l.l_pos, "%.17g") << ',' << fmt(l.l_neg, "%.17g") << ','
                << fmt(l.l_anc, "%.17g") << ',' << fmt(l.total, "%.17g") << '\n';
        }
    }

    EvalOptions opts{hp.model, a.common.strategy(), a.common.threads};
    EvalReport eval = reconstruction_report(g, report.embedding, opts);
    eval.spearman = radius_outdegree_spearman(g, report.embedding);
    print_report(eval);
    return 0;
}

struct EvalArgs {
    std::string edges_path;
    std::string embedding_path;
    std::string full_edges_path;  // link prediction only
    CommonFlags common;
    bool with_map = false;
    std::string map_direction = "out";
    std::string map_ranker = "score";
};

int run_eval(const EvalArgs& a, bool link_prediction) {
    const DirectedGraph g = load_edge_list(a.edges_path);
    const EmbeddingFile file = load_embedding(a.embedding_path);
    const EvalOptions opts{a.common.model(), a.common.strategy(), a.common.threads};

    const DirectedGraph* truth = &g;
    DancarEmbedding emb;
    DirectedGraph full, train;
    EvalReport report;
    if (link_prediction) {
        full = load_edge_list(a.full_edges_path);
        // The two files may intern labels in different orders; the full
        // graph's id space is canonical.
        std::unordered_map<std::string_view, NodeId> full_ids;
        for (std::size_t v = 0; v < full.num_nodes(); ++v) {
            full_ids.emplace(full.label(static_cast<NodeId>(v)), static_cast<NodeId>(v));
        }
        std::vector<Edge> train_edges;
        train_edges.reserve(g.num_edges());
        for (const Edge& e : g.edges()) {
            const auto h = full_ids.find(g.label(e.head));
            const auto t = full_ids.find(g.label(e.tail));
            if (h == full_ids.end() || t == full_ids.end()) {
                throw std::runtime_error("train edges are not a subset of the full edge set");
            }
            train_edges.push_back({h->second, t->second});
        }
        train = DirectedGraph(full.num_nodes(), std::move(train_edges), full.labels());
        emb = align_to_graph(file, full);
        report = link_prediction_report(full, train, emb, opts);
        truth = &full;
    } else {
        emb = align_to_graph(file, g);
        report = reconstruction_report(g, emb, opts);
    }

    if (a.with_map) {
        const ScoreModel model = opts.model;
        EdgeRanker ranker;
        if (a.map_ranker == "poincare") {
            // For embeddings imported from a Poincare point set the anchors
            // are the original points; rank by the hyperbolic metric.
            ranker = [&emb](NodeId head, NodeId tail) {
                return poincare_distance(emb.anchor(head), emb.anchor(tail));
            };
        } else {
            ranker = [&emb, model](NodeId head, NodeId tail) {
                return edge_score(emb, head, tail, model);
            };
        }
        report.map = map_score(*truth, ranker,
                               a.map_direction == "in" ? MapDirection::In : MapDirection::Out);
    }
    report.spearman = radius_outdegree_spearman(*truth, emb);
    print_report(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DANCAR: anchored-disk embeddings of directed graphs"};
    app.require_subcommand(1);

    // train ---------------------------------------------------------------
    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "Learn an embedding from an edge list");
    train_cmd->add_option("edges", train_args.edges_path, "Edge-list file")->required();
    train_cmd->add_option("--config", train_args.config_path,
                          "Hyperparameter config file (flat key/value lines)");
    train_cmd->add_option("--out", train_args.out_path, "Output embedding file")->required();
    train_cmd->add_option("--log", train_args.log_path, "CSV loss log (iter,l_pos,l_neg,l_anc,total)");
    train_cmd->add_option("--dim", train_args.dim, "Embedding dimension k");
    train_cmd->add_option("--iterations", train_args.hp.iterations, "Training iterations");
    train_cmd->add_option("--seed", train_args.hp.seed, "Seed for all randomness");
    train_cmd->add_option("--margin", train_args.hp.margin, "Margin mu");
    train_cmd->add_option("--lambda-neg", train_args.hp.lambda_neg, "Negative-loss weight");
    train_cmd->add_option("--lambda-anc", train_args.hp.lambda_anc, "Anchor-loss weight");
    train_cmd->add_option("--b1", train_args.hp.b1, "Positive/anchor batch size");
    train_cmd->add_option("--b2", train_args.hp.b2, "Negative batch size");
    train_cmd->add_option("--alpha", train_args.hp.adam_alpha, "Adam learning rate");
    train_cmd->add_option("--beta1", train_args.hp.adam_beta1, "Adam beta1");
    train_cmd->add_option("--beta2", train_args.hp.adam_beta2, "Adam beta2");
    train_cmd->add_option("--negative-mode", train_args.negative_mode,
                          "Negative sampling: exact or approximate")
        ->check(CLI::IsMember({"exact", "approximate"}));
    add_common_flags(train_cmd, train_args.common);

    // reconstruct / link-predict -------------------------------------------
    EvalArgs eval_args;
    auto* rec_cmd = app.add_subcommand("reconstruct", "Score an embedding against its graph");
    rec_cmd->add_option("edges", eval_args.edges_path, "Edge-list file")->required();
    rec_cmd->add_option("embedding", eval_args.embedding_path, "Embedding file")->required();
    rec_cmd->add_flag("--map", eval_args.with_map, "Also compute mean average precision");
    rec_cmd->add_option("--map-direction", eval_args.map_direction, "Rank out- or in-neighbors")
        ->check(CLI::IsMember({"out", "in"}));
    rec_cmd->add_option("--map-ranker", eval_args.map_ranker,
                      "Ranking score: embedding score or hyperbolic anchor distance")
        ->check(CLI::IsMember({"score", "poincare"}));
    add_common_flags(rec_cmd, eval_args.common);

    auto* lp_cmd = app.add_subcommand(
        "link-predict", "Score a train-split embedding against the full edge set");
    lp_cmd->add_option("edges", eval_args.edges_path, "Training edge-list file")->required();
    lp_cmd->add_option("embedding", eval_args.embedding_path, "Embedding file")->required();
    lp_cmd->add_option("--full", eval_args.full_edges_path, "Full edge-list file")->required();
    lp_cmd->add_flag("--map", eval_args.with_map, "Also compute mean average precision");
    lp_cmd->add_option("--map-direction", eval_args.map_direction, "Rank out- or in-neighbors")
        ->check(CLI::IsMember({"out", "in"}));
    lp_cmd->add_option("--map-ranker", eval_args.map_ranker,
                      "Ranking score: embedding score or hyperbolic anchor distance")
        ->check(CLI::IsMember({"score", "poincare"}));
    add_common_flags(lp_cmd, eval_args.common);

    // tree-embed ------------------------------------------------------------
    std::string tree_edges, tree_root, tree_out, tree_svg;
    auto* tree_cmd = app.add_subcommand("tree-embed", "Closed-form 2-d embedding of a rooted tree");
    tree_cmd->add_option("edges", tree_edges, "Edge-list file (edges point away from the root)")
        ->required();
    tree_cmd->add_option("root", tree_root, "Root node label")->required();
    tree_cmd->add_option("--out", tree_out, "Output embedding file")->required();
    tree_cmd->add_option("--svg", tree_svg, "Also render the embedding to this SVG file");

    // import-poincare ---------------------------------------------------------
    std::string poincare_points, poincare_out;
    double poincare_eps = 0.0;
    auto* imp_cmd = app.add_subcommand(
        "import-poincare", "Convert Poincare-ball points to an equivalent embedding");
    imp_cmd->add_option("points", poincare_points, "Points file: \"label x_1 .. x_k\" per line")
        ->required();
    imp_cmd->add_option("--epsilon", poincare_eps, "Hyperbolic edge threshold")->required();
    imp_cmd->add_option("--out", poincare_out, "Output embedding file")->required();

    // transform-bipartite ------------------------------------------------------
    std::string bip_in, bip_out;
    auto* bip_cmd = app.add_subcommand("transform-bipartite",
                                       "Write the bipartite double cover of a graph");
    bip_cmd->add_option("input", bip_in, "Edge-list file")->required();
    bip_cmd->add_option("output", bip_out, "Output edge-list file")->required();

    // render -------------------------------------------------------------------
    std::string render_embedding, render_out, render_edges;
    RenderOptions render_opts;
    std::vector<std::string> highlight_labels;
    auto* render_cmd = app.add_subcommand("render", "Render a 2-d embedding to SVG");
    render_cmd->add_option("embedding", render_embedding, "Embedding file")->required();
    render_cmd->add_option("output", render_out, "Output SVG file ('-' for stdout)")->required();
    render_cmd->add_option("--edges", render_edges, "Edge-list file to draw arrows from");
    render_cmd->add_option("--highlight", highlight_labels, "Node labels to highlight");
    render_cmd->add_option("--stroke-width", render_opts.stroke_width, "Disk stroke width (px)");
    render_cmd->add_option("--canvas", render_opts.canvas_px, "Canvas width (px)");

    // graph utilities ------------------------------------------------------------
    std::string closure_in, closure_out;
    auto* closure_cmd = app.add_subcommand("closure", "Write the transitive closure of a DAG");
    closure_cmd->add_option("input", closure_in, "Edge-list file")->required();
    closure_cmd->add_option("output", closure_out, "Output edge-list file")->required();

    std::string wcc_in, wcc_out;
    auto* wcc_cmd =
        app.add_subcommand("largest-wcc", "Keep the largest weakly connected component");
    wcc_cmd->add_option("input", wcc_in, "Edge-list file")->required();
    wcc_cmd->add_option("output", wcc_out, "Output edge-list file")->required();

    std::string split_in, split_train, split_held;
    double split_fraction = 0.5;
    std::uint64_t split_seed = 0;
    auto* split_cmd = app.add_subcommand("split", "Random train/held-out edge partition");
    split_cmd->add_option("input", split_in, "Edge-list file")->required();
    split_cmd->add_option("--fraction", split_fraction, "Train fraction in (0,1]");
    split_cmd->add_option("--seed", split_seed, "Split seed");
    split_cmd->add_option("--train", split_train, "Output train edge list")->required();
    split_cmd->add_option("--held-out", split_held, "Output held-out edge list")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (train_cmd->parsed()) return run_train(train_args, train_cmd);
        if (rec_cmd->parsed()) return run_eval(eval_args, false);
        if (lp_cmd->parsed()) return run_eval(eval_args, true);

        if (tree_cmd->parsed()) {
            const DirectedGraph g = load_edge_list(tree_edges);
            const auto root = g.node_by_label(tree_root);
            if (!root) throw std::runtime_error("root label '" + tree_root + "' not in graph");
            const DancarEmbedding emb = embed_tree(g, *root);
            save_embedding(tree_out, emb, g.labels());
            if (!tree_svg.empty()) {
                std::ofstream svg(tree_svg);
                if (!svg) throw std::runtime_error("cannot write SVG: " + tree_svg);
                svg << render_svg(emb, &g, RenderOptions{});
            }
            return 0;
        }

        if (imp_cmd->parsed()) {
            const PoincarePointFile points = load_poincare_points(poincare_points);
            const DancarEmbedding emb = import_poincare(points.points, poincare_eps);
            save_embedding(poincare_out, emb, points.labels);
            return 0;
        }

        if (bip_cmd->parsed()) {
            save_edge_list(bip_out, transform_to_bipartite(load_edge_list(bip_in)));
            return 0;
        }

        if (render_cmd->parsed()) {
            const EmbeddingFile file = load_embedding(render_embedding);
            DirectedGraph g;
            const DirectedGraph* graph = nullptr;
            DancarEmbedding emb = file.embedding;
            if (!render_edges.empty()) {
                g = load_edge_list(render_edges);
                emb = align_to_graph(file, g);
                graph = &g;
            }
            for (const std::string& label : highlight_labels) {
                NodeId id = 0;
                if (graph) {
                    const auto found = g.node_by_label(label);
                    if (!found) throw std::runtime_error("highlight label '" + label + "' not in graph");
                    id = *found;
                } else {
                    const auto it = std::find(file.labels.begin(), file.labels.end(), label);
                    if (it == file.labels.end()) {
                        throw std::runtime_error("highlight label '" + label + "' not in embedding");
                    }
                    id = static_cast<NodeId>(it - file.labels.begin());
                }
                render_opts.highlight_nodes.push_back(id);
            }
            const std::string svg = render_svg(emb, graph, render_opts);
            if (render_out == "-") {
                std::cout << svg;
            } else {
                std::ofstream out(render_out);
                if (!out) throw std::runtime_error("cannot write SVG: " + render_out);
                out << svg;
            }
            return 0;
        }

        if (closure_cmd->parsed()) {
            save_edge_list(closure_out, transitive_closure(load_edge_list(closure_in)));
            return 0;
        }

        if (wcc_cmd->parsed()) {
            save_edge_list(wcc_out, largest_weakly_connected_component(load_edge_list(wcc_in)));
            return 0;
        }

        if (split_cmd->parsed()) {
            const DirectedGraph g = load_edge_list(split_in);
            EdgeSplit split = split_edges(g, split_fraction, split_seed);
            {
                std::ofstream out(split_train);
                if (!out) throw std::runtime_error("cannot write edge list: " + split_train);
                write_edge_list(out, split.train);
                // A node whose every incident edge went to the held-out set
                // would vanish from the file; a self-loop line keeps it in
                // the node set (the parser interns the label, drops the loop).
                for (NodeId v = 0; v < split.train.num_nodes(); ++v) {
                    if (split.train.out_degree(v) == 0 && split.train.in_degree(v) == 0) {
                        out << g.label(v) << ' ' << g.label(v) << '\n';
                    }
                }
            }
            std::ofstream held(split_held);
            if (!held) throw std::runtime_error("cannot write edge list: " + split_held);
            for (const Edge& e : split.held_out) {
                held << g.label(e.head) << ' ' << g.label(e.tail) << '\n';
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
