#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dancar/embedding.hpp"
#include "dancar/graph.hpp"

namespace dancar {

/// Geometry constants for the closed-form tree embedding, derived from
/// the maximum child count n. t is the parent-to-child radius ratio and
/// k_scale the center offset as a fraction of the parent radius; both lie
/// in (0,1), which is what makes every child anchor land strictly inside
/// its parent disk.
struct TreeLayoutConstants {
    int max_children = 0;  // n
    double alpha = 0.0;    // fan start angle, -(n-1)*pi/(2n)
    double p = 0.0;        // cos(alpha)
    double q = 0.0;        // cos(2*alpha)
    double t = 0.0;
    double k_scale = 0.0;
};

TreeLayoutConstants tree_layout_constants(int max_children);

/// Exact 2-d embedding of a rooted out-tree: breadth-first placement with
/// radii shrinking by t per level and children fanned around the parent
/// center. Anchors are set to the disk centers. Throws unless `tree` is a
/// directed tree with every edge oriented away from `root`.
DancarEmbedding embed_tree(const DirectedGraph& tree, NodeId root);

/// Poincare-ball metric arcosh(1 + 2||x-y||^2 / ((1-||x||^2)(1-||y||^2))).
/// Both arguments must have norm < 1.
double poincare_distance(std::span<const double> x, std::span<const double> y);

struct EuclideanBall {
    std::vector<double> center;
    double radius = 0.0;
};

/// The hyperbolic ball D_P(a, r) expressed as the Euclidean ball it
/// coincides with as a point set: center a/(K+1) and radius
/// sqrt(K/(K+1) * (1 - ||a||^2/(K+1))) with K = (cosh r - 1)/2 * (1-||a||^2).
EuclideanBall poincare_ball_to_euclidean(std::span<const double> a, double r);

/// Anchors at the given Poincare points, disks converted with radius
/// epsilon. The reconstruction of the result equals the symmetric
/// epsilon-threshold graph of the hyperbolic metric.
DancarEmbedding import_poincare(const std::vector<std::vector<double>>& points, double epsilon);

struct PoincarePointFile {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> points;
};

/// Text file, one node per line: "label x_1 .. x_k".
PoincarePointFile load_poincare_points(const std::filesystem::path& path);

/// The bipartite double cover used to view an anchored-disk arrangement
/// as a plain disk embedding: node u becomes u_0 (id u) and u_1 (id |V|+u),
/// with an edge (u_0, v_1) per original edge plus (u_0, u_1) per node.
/// The output is bipartite and acyclic for any input.
DirectedGraph transform_to_bipartite(const DirectedGraph& g);

}  // namespace dancar
