#pragma once

#include <string>
#include <vector>

#include "cqembed/topology.hpp"

namespace cqembed {

// Rule tags recorded per guest vertex. The s2 tags name the case family of
// the two-way-split rules; "search-fallback" marks vertices the backtracking
// search placed after every rule alternative failed.
namespace rule {
inline constexpr const char* root = "prem";
inline constexpr const char* flat = "s1.f";
inline constexpr const char* tight_anchor = "s2.c1";
inline constexpr const char* tight_cross = "s2.c2";
inline constexpr const char* tight_spill = "s2.c3";
inline constexpr const char* fixed = "fixed";
inline constexpr const char* fallback = "search-fallback";
} // namespace rule

struct VertexPlacement {
    std::string rule;
    // Guest id whose image is the prescribed path intermediate for the edge
    // from the parent; -1 = prescribed direct edge, -2 = no prescription
    // (route by shortest path).
    int via = -1;
};

struct EdgePath {
    int parent = 0;
    int child = 0;
    std::vector<VertexValue> path; // host vertices, images at both ends
    bool repaired = false;
};

struct RepairRecord {
    std::string parent;
    std::string child;
    std::vector<std::string> prescribed;
    std::vector<std::string> substituted;
    std::string note;
};

struct Embedding {
    int n = 0;
    int m = 0;
    Graph guest;
    Graph host;
    std::vector<VertexValue> vertex_map;     // by guest id
    std::vector<VertexPlacement> provenance; // by guest id
    std::vector<EdgePath> edge_paths;        // sorted by (parent, child)
    std::vector<RepairRecord> repairs;
    int fallback_count = 0;

    std::string host_label(VertexValue v) const { return to_bit_label(v, m); }
};

// High m-4 bits naming the containing 4-dimensional block, plus the low
// 4-bit address inside it.
struct SupernodeCoord {
    std::string prefix;
    std::string addr;
};

inline SupernodeCoord split_supernode(VertexValue v, int m) {
    if (m < 4) throw std::invalid_argument("split_supernode requires dimension >= 4");
    std::string label = to_bit_label(v, m);
    return {label.substr(0, static_cast<std::size_t>(m - 4)),
            label.substr(static_cast<std::size_t>(m - 4))};
}

} // namespace cqembed
