#include "dancar/analytic.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dancar {

namespace {

double squared_norm(std::span<const double> x) {
    double s = 0.0;
    for (const double v : x) s += v * v;
    return s;
}

double arcosh(double z) {
    if (z < 1.0) z = 1.0;  // guard rounding just below the domain edge
    return std::log(z + std::sqrt(z * z - 1.0));
}

void require_in_unit_ball(std::span<const double> x, const char* what) {
    if (!(squared_norm(x) < 1.0)) {
        throw std::domain_error(std::string(what) + ": point must lie in the open unit ball");
    }
}

}  // namespace

TreeLayoutConstants tree_layout_constants(int max_children) {
    if (max_children < 1) {
        throw std::invalid_argument("tree_layout_constants requires max_children >= 1");
    }
    TreeLayoutConstants c;
    c.max_children = max_children;
    const double n = max_children;
    c.alpha = -(n - 1.0) * std::numbers::pi / (2.0 * n);
    c.p = std::cos(c.alpha);
    c.q = std::cos(2.0 * c.alpha);
    c.t = (std::sqrt((c.p + c.q) * (c.p + c.q) + 4.0 * c.p) - c.p + c.q) / (2.0 * (c.q + 1.0));
    c.k_scale = 1.0 / std::sqrt(1.0 + c.t * c.t);
    return c;
}

DancarEmbedding embed_tree(const DirectedGraph& tree, NodeId root) {
    const std::size_t n = tree.num_nodes();
    if (root >= n) throw std::invalid_argument("root id out of range");
    if (tree.num_edges() != n - 1 || tree.in_degree(root) != 0) {
        throw std::invalid_argument("input is not a rooted out-tree");
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (v != root && tree.in_degree(static_cast<NodeId>(v)) != 1) {
            throw std::invalid_argument("input is not a rooted out-tree");
        }
    }

    int max_children = 0;
    for (std::size_t v = 0; v < n; ++v) {
        max_children = std::max(max_children, static_cast<int>(tree.out_degree(static_cast<NodeId>(v))));
    }

    DancarEmbedding emb = DancarEmbedding::zeros(n, 2);
    std::vector<double> theta(n, 0.0);
    emb.center(root)[0] = 0.0;
    emb.center(root)[1] = 0.0;
    emb.radii[root] = 1.0;

    std::size_t placed = 1;
    if (max_children > 0) {
        const TreeLayoutConstants c = tree_layout_constants(max_children);
        const double step = std::numbers::pi / static_cast<double>(max_children);
        std::deque<NodeId> queue{root};
        while (!queue.empty()) {
            const NodeId u = queue.front();
            queue.pop_front();
            double phi = c.alpha;
            for (const NodeId v : tree.out_neighbors(u)) {  // ascending id order
                theta[v] = theta[u] + phi;
                emb.center(v)[0] = emb.center(u)[0] + emb.radii[u] * c.k_scale * std::cos(theta[v]);
                emb.center(v)[1] = emb.center(u)[1] + emb.radii[u] * c.k_scale * std::sin(theta[v]);
                emb.radii[v] = c.t * emb.radii[u];
                queue.push_back(v);
                ++placed;
                phi += step;
            }
        }
    }
    if (placed != n) {
        // Right degree sequence but disconnected from the root.
        throw std::invalid_argument("input is not a rooted out-tree");
    }
    emb.anchors = emb.centers;
    return emb;
}

double poincare_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
    require_in_unit_ball(x, "poincare_distance");
    require_in_unit_ball(y, "poincare_distance");
    double diff2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        diff2 += d * d;
    }
    const double denom = (1.0 - squared_norm(x)) * (1.0 - squared_norm(y));
    return arcosh(1.0 + 2.0 * diff2 / denom);
}

EuclideanBall poincare_ball_to_euclidean(std::span<const double> a, double r) {
    require_in_unit_ball(a, "poincare_ball_to_euclidean");
    if (!(r > 0.0)) throw std::domain_error("hyperbolic radius must be > 0");
    const double a2 = squared_norm(a);
    const double K = 0.5 * (std::cosh(r) - 1.0) * (1.0 - a2);
    EuclideanBall ball;
    ball.center.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) ball.center[i] = a[i] / (K + 1.0);
    ball.radius = std::sqrt(K / (K + 1.0) * (1.0 - a2 / (K + 1.0)));
    return ball;
}

DancarEmbedding import_poincare(const std::vector<std::vector<double>>& points, double epsilon) {
    if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be > 0");
    const std::size_t n = points.size();
    const int dim = n > 0 ? static_cast<int>(points.front().size()) : 1;
    DancarEmbedding emb = DancarEmbedding::zeros(n, dim);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& p = points[v];
        if (static_cast<int>(p.size()) != dim) {
            throw std::invalid_argument("poincare points disagree on dimension");
        }
        const EuclideanBall ball = poincare_ball_to_euclidean(p, epsilon);
        std::copy(p.begin(), p.end(), emb.anchor(static_cast<NodeId>(v)).begin());
        std::copy(ball.center.begin(), ball.center.end(),
                  emb.center(static_cast<NodeId>(v)).begin());
        emb.radii[v] = ball.radius;
    }
    return emb;
}

PoincarePointFile load_poincare_points(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open points file: " + path.string());
    PoincarePointFile out;
    std::string line;
    std::size_t line_no = 0;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string label;
        if (!(ls >> label)) continue;
        if (label.front() == '#') continue;
        std::vector<double> coords;
        double x = 0.0;
        while (ls >> x) coords.push_back(x);
        if (coords.empty() || !ls.eof()) {
            throw std::runtime_error("points file line " + std::to_string(line_no) +
                                     ": expected \"label x_1 .. x_k\"");
        }
        if (dim == 0) {
            dim = coords.size();
        } else if (coords.size() != dim) {
            throw std::runtime_error("points file line " + std::to_string(line_no) +
                                     ": dimension differs from previous lines");
        }
        out.labels.push_back(std::move(label));
        out.points.push_back(std::move(coords));
    }
    return out;
}

DirectedGraph transform_to_bipartite(const DirectedGraph& g) {
    const std::size_t n = g.num_nodes();
    const auto shift = static_cast<NodeId>(n);
    std::vector<Edge> edges;
    edges.reserve(g.num_edges() + n);
    for (const Edge& e : g.edges()) edges.push_back({e.head, static_cast<NodeId>(shift + e.tail)});
    for (std::size_t u = 0; u < n; ++u) {
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(shift + u)});
    }
    std::vector<std::string> labels;
    labels.reserve(2 * n);
    for (std::size_t u = 0; u < n; ++u) labels.push_back(g.label(static_cast<NodeId>(u)) + "_0");
    for (std::size_t u = 0; u < n; ++u) labels.push_back(g.label(static_cast<NodeId>(u)) + "_1");
    return DirectedGraph(2 * n, std::move(edges), std::move(labels));
}

}  // namespace dancar
