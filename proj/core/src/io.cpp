#include "dancar/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dancar {

namespace {

void put_double(std::ostream& out, double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);  // exact round trip
    out << buf;
}

bool has_whitespace(const std::string& s) {
    for (const char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) return true;
    }
    return false;
}

}  // namespace

void write_embedding(std::ostream& out, const DancarEmbedding& emb,
                     std::span<const std::string> labels) {
    if (labels.size() != emb.num_nodes) {
        throw std::invalid_argument("label count does not match embedding node count");
    }
    out << "dancar " << emb.dim << ' ' << emb.num_nodes << '\n';
    for (std::size_t v = 0; v < emb.num_nodes; ++v) {
        if (labels[v].empty() || has_whitespace(labels[v])) {
            throw std::invalid_argument("node label unfit for the embedding format: '" +
                                        labels[v] + "'");
        }
        out << labels[v];
        for (const double x : emb.anchor(static_cast<NodeId>(v))) {
            out << ' ';
            put_double(out, x);
        }
        for (const double c : emb.center(static_cast<NodeId>(v))) {
            out << ' ';
            put_double(out, c);
        }
        out << ' ';
        put_double(out, emb.radii[v]);
        out << '\n';
    }
}

void save_embedding(const std::filesystem::path& path, const DancarEmbedding& emb,
                    std::span<const std::string> labels) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write embedding file: " + path.string());
    write_embedding(out, emb, labels);
}

EmbeddingFile read_embedding(std::istream& in) {
    std::string magic;
    int dim = 0;
    std::size_t n = 0;
    if (!(in >> magic >> dim >> n) || magic != "dancar" || dim < 1) {
        throw std::runtime_error("bad embedding header; expected \"dancar <k> <|V|>\"");
    }
    EmbeddingFile file;
    file.embedding = DancarEmbedding::zeros(n, dim);
    file.labels.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (!(in >> file.labels[v])) {
            throw std::runtime_error("embedding file truncated at node " + std::to_string(v));
        }
        auto read_block = [&](std::span<double> dst) {
            for (double& x : dst) {
                if (!(in >> x) || !std::isfinite(x)) {
                    throw std::runtime_error("bad value for node '" + file.labels[v] + "'");
                }
            }
        };
        read_block(file.embedding.anchor(static_cast<NodeId>(v)));
        read_block(file.embedding.center(static_cast<NodeId>(v)));
        double r = 0.0;
        if (!(in >> r) || !std::isfinite(r) || r <= 0.0) {
            throw std::runtime_error("bad radius for node '" + file.labels[v] + "'");
        }
        file.embedding.radii[v] = r;
    }
    return file;
}

EmbeddingFile load_embedding(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open embedding file: " + path.string());
    return read_embedding(in);
}

}  // namespace dancar
