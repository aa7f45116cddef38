#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cqembed/embedding.hpp"

namespace cqembed {

// Host dimension for a guest of height n: the ceiling of log2((3^n-1)/2)
// up to n = 8, then 2(n-8) + 12. Throws for n < 2. Both branches agree at
// n = 8 (both give 12).
int dimension_for(int n);

// Raised when no injective dilation-2 extension exists for some vertex.
struct EmbedError : std::runtime_error {
    explicit EmbedError(const std::string& what) : std::runtime_error(what) {}
};

// First index into candidates accepted by viable, or -1 when none is. The
// rule tables list alternatives in a fixed order; this is the selection
// policy used everywhere a rule offers more than one.
int select_alternative(std::span<const VertexValue> candidates,
                       const std::function<bool(VertexValue)>& viable);

// Vertex stage: total injective map plus provenance; edge_paths left empty.
// Precondition: host dimension == dimension_for(guest height).
Embedding embed_vertices(const Graph& guest, const Graph& host);

// Edge stage: fills edge_paths from the recorded rules, substituting a
// common host neighbor where a prescribed intermediate is not adjacent to
// both endpoints (counted in repairs). Throws EmbedError when some guest
// edge spans host distance > 2.
void route_edges(Embedding& e);

// Both stages for PQT_n into CQ_{dimension_for(n)}. n in [2, 10].
Embedding embed(int n);

// Pure depth-first backtracking search, no rule tables: extends `fixed`
// (pairs of guest address, host label) to a full injective map in which
// every guest edge spans host distance <= 2. Child candidates are host
// vertices within distance 2 of the parent's image, ordered by (distance,
// numeric label). Returns the first complete solution, edges routed by
// shortest paths. Throws EmbedError on exhaustion, naming the deepest
// frontier reached.
Embedding embed_fallback(const Graph& guest, const Graph& host,
                         const std::vector<std::pair<std::string, std::string>>& fixed);

} // namespace cqembed
