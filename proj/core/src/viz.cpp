#include "dancar/viz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace dancar {

namespace {

constexpr const char* kDiskStroke = "#1f77b4";
constexpr const char* kHighlightStroke = "#d62728";
constexpr const char* kAnchorFill = "#333333";
constexpr const char* kEdgeStroke = "#7f7f7f";

void put_number(std::ostringstream& out, double x) {
    // %g keeps the output compact; 9 digits is plenty for pixel geometry
    // and keeps rendering deterministic.
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    out << buf;
}

}  // namespace

std::string render_svg(const DancarEmbedding& emb, const DirectedGraph* g,
                       const RenderOptions& options) {
    if (emb.dim != 2) {
        throw std::invalid_argument("visualization requires 2-dimensional embedding");
    }
    const std::size_t n = emb.num_nodes;

    // World bounds over disks and anchors, with the y axis flipped so the
    // mathematical orientation renders upright.
    double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;
    if (n > 0) {
        min_x = min_y = std::numeric_limits<double>::infinity();
        max_x = max_y = -std::numeric_limits<double>::infinity();
        for (std::size_t v = 0; v < n; ++v) {
            const auto c = emb.center(static_cast<NodeId>(v));
            const auto a = emb.anchor(static_cast<NodeId>(v));
            const double r = emb.radii[v];
            min_x = std::min({min_x, c[0] - r, a[0]});
            max_x = std::max({max_x, c[0] + r, a[0]});
            min_y = std::min({min_y, -c[1] - r, -a[1]});
            max_y = std::max({max_y, -c[1] + r, -a[1]});
        }
        const double pad_x = 0.05 * std::max(max_x - min_x, 1e-9);
        const double pad_y = 0.05 * std::max(max_y - min_y, 1e-9);
        min_x -= pad_x;
        max_x += pad_x;
        min_y -= pad_y;
        max_y += pad_y;
    }
    const double view_w = max_x - min_x;
    const double view_h = max_y - min_y;
    const int canvas_w = std::max(options.canvas_px, 1);
    const int canvas_h = std::max(1, static_cast<int>(std::lround(canvas_w * view_h / view_w)));

    // Pixel-sized strokes and dots expressed in world units.
    const double px = view_w / static_cast<double>(canvas_w);
    const double stroke = std::max(options.stroke_width, 0.0) * px;
    const double dot = 2.5 * px;

    const std::unordered_set<NodeId> highlight(options.highlight_nodes.begin(),
                                               options.highlight_nodes.end());

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas_w << "\" height=\""
        << canvas_h << "\" viewBox=\"";
    put_number(out, min_x);
    out << ' ';
    put_number(out, min_y);
    out << ' ';
    put_number(out, view_w);
    out << ' ';
    put_number(out, view_h);
    out << "\">\n";

    const bool draw_edges = options.show_edges && g != nullptr && g->num_edges() > 0;
    if (draw_edges) {
        out << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
               "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">"
               "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\""
            << kEdgeStroke << "\"/></marker></defs>\n";
    }

    for (std::size_t v = 0; v < n; ++v) {
        const auto c = emb.center(static_cast<NodeId>(v));
        const bool hi = highlight.contains(static_cast<NodeId>(v));
        out << "<circle cx=\"";
        put_number(out, c[0]);
        out << "\" cy=\"";
        put_number(out, -c[1]);
        out << "\" r=\"";
        put_number(out, emb.radii[v]);
        out << "\" fill=\"" << (hi ? kHighlightStroke : kDiskStroke)
            << "\" fill-opacity=\"0.06\" stroke=\"" << (hi ? kHighlightStroke : kDiskStroke)
            << "\" stroke-width=\"";
        put_number(out, stroke * (hi ? 2.0 : 1.0));
        out << "\"/>\n";
    }

    if (draw_edges) {
        for (const Edge& e : g->edges()) {
            const auto c = emb.center(e.head);
            const auto x = emb.anchor(e.tail);
            out << "<line x1=\"";
            put_number(out, c[0]);
            out << "\" y1=\"";
            put_number(out, -c[1]);
            out << "\" x2=\"";
            put_number(out, x[0]);
            out << "\" y2=\"";
            put_number(out, -x[1]);
            out << "\" stroke=\"" << kEdgeStroke << "\" stroke-width=\"";
            put_number(out, stroke * 0.5);
            out << "\" marker-end=\"url(#arrow)\"/>\n";
        }
    }

    // Anchor dots go last so they stay visible; rounded rects keep the
    // one-<circle>-per-disk contract intact.
    for (std::size_t v = 0; v < n; ++v) {
        const auto a = emb.anchor(static_cast<NodeId>(v));
        out << "<rect x=\"";
        put_number(out, a[0] - dot);
        out << "\" y=\"";
        put_number(out, -a[1] - dot);
        out << "\" width=\"";
        put_number(out, 2.0 * dot);
        out << "\" height=\"";
        put_number(out, 2.0 * dot);
        out << "\" rx=\"";
        put_number(out, dot);
        out << "\" fill=\""
            << (highlight.contains(static_cast<NodeId>(v)) ? kHighlightStroke : kAnchorFill)
            << "\"/>\n";
    }

    out << "</svg>\n";
    return out.str();
}

}  // namespace dancar
