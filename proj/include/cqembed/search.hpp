#pragma once

#include <vector>

#include "cqembed/embedding.hpp"

namespace cqembed {

inline constexpr VertexValue kUnplaced = ~VertexValue{0};

struct SearchProblem {
    const Graph& guest;
    int m;
    std::vector<VertexValue>& map; // kUnplaced where free to choose
    std::vector<char>& occ;        // host occupancy, may include foreign blocks
    std::int64_t node_limit = 0;   // 0 = exhaustive
    const std::vector<int>* only = nullptr; // restrict to these guest ids
    int deepest = 0;               // out: most vertices simultaneously placed
};

// Depth-first backtracking completion of the partial map: guest vertices in
// preorder, candidates for each vertex are the host vertices within distance
// two of the parent's image ordered by (distance, numeric label). Prunes on
// free-slot counts and on ball-2 supply versus remaining child demand, and
// breaks the symmetry between sibling subtrees that contain no pre-placed
// vertex. Leaves map/occ extended on success, untouched on failure.
bool dilation2_search(SearchProblem& p);

} // namespace cqembed
