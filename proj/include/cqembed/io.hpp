#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cqembed/embedding.hpp"
#include "cqembed/verifier.hpp"

namespace cqembed {

enum class ExportFormat { Dot, Json, EdgeList };

ExportFormat parse_format(std::string_view s); // "dot" | "json" | "edgelist"

// Deterministic renderings (sorted vertex/edge order throughout).
std::string graph_to_dot(const Graph& g, const Embedding* embedding = nullptr);
std::string graph_to_edgelist(const Graph& g);
std::string graph_to_json(const Graph& g);

// The embedding report; bit strings are serialized as text, most significant
// bit first.
std::string embedding_to_json(const Embedding& e);

std::string metrics_to_json(const MetricsReport& r);

// Reads a report produced by embedding_to_json. Schema violations throw
// std::invalid_argument naming the offending field; semantic violations
// (non-injective map, invalid hops) load fine and are left for verify().
Embedding import_embedding(const std::filesystem::path& source);
Embedding parse_embedding(const std::string& text);

struct ExportBundle {
    std::vector<std::pair<std::string, const Graph*>> graphs; // unique names
    const Embedding* embedding = nullptr;
    ExportFormat format = ExportFormat::Dot;
};

// Writes one file per graph (plus the embedding report when present and the
// format is json) into the destination directory; returns the paths written.
std::vector<std::filesystem::path> export_bundle(const ExportBundle& bundle,
                                                 const std::filesystem::path& destination);

} // namespace cqembed
