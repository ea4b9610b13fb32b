#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dancar/embedding.hpp"

namespace dancar {

/// Embedding file: header "dancar <k> <|V|>", then one line per node:
/// "<label> x_1..x_k c_1..c_k r". Values are written with 17 significant
/// digits so a write/read round trip is exact.
void write_embedding(std::ostream& out, const DancarEmbedding& emb,
                     std::span<const std::string> labels);
void save_embedding(const std::filesystem::path& path, const DancarEmbedding& emb,
                    std::span<const std::string> labels);

struct EmbeddingFile {
    DancarEmbedding embedding;
    std::vector<std::string> labels;
};

EmbeddingFile read_embedding(std::istream& in);
EmbeddingFile load_embedding(const std::filesystem::path& path);

}  // namespace dancar
