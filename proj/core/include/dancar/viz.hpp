#pragma once

#include <string>
#include <vector>

#include "dancar/embedding.hpp"
#include "dancar/graph.hpp"

namespace dancar {

struct RenderOptions {
    bool show_edges = true;               // needs a graph to take effect
    std::vector<NodeId> highlight_nodes;  // drawn with a distinct stroke
    double stroke_width = 1.0;            // pixels
    int canvas_px = 800;                  // canvas width in pixels
};

/// Static SVG of a 2-d embedding: one <circle> per disk, one small dot
/// marker per anchor, and an arrow from c_v to x_w per edge when a graph
/// is given and show_edges is set. The viewport is fitted to the bounding
/// box of all disks with 5% padding; the y axis is flipped so mathematical
/// coordinates render upright. Throws unless emb.dim == 2.
std::string render_svg(const DancarEmbedding& emb, const DirectedGraph* g = nullptr,
                       const RenderOptions& options = {});

}  // namespace dancar
