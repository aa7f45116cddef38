#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cqembed/bitlabel.hpp"

namespace cqembed {

// ---------------------------------------------------------------------------
// Crossed-cube adjacency
// ---------------------------------------------------------------------------

// Pair relation on 2-bit strings: {(00,00),(10,10),(01,11),(11,01)}.
// x and y are the numeric values of the 2-bit strings (x1 x0 -> x1*2+x0).
bool pair_related(unsigned x, unsigned y);

// Validating overload on printed 2-bit strings; rejects lengths != 2.
bool pair_related(std::string_view x, std::string_view y);

// True iff u and v are adjacent in CQ_m. Implements the recursive rule by
// stripping the shared top bits, then checking the even-dimension bit
// condition and the pair relation on the remaining low bit pairs.
// Throws on u == v.
bool cq_adjacent(VertexValue u, VertexValue v, int m);

// The unique neighbor of u across level l (0 <= l < m): flips bit l, keeps
// bit l-1 when l is odd, and applies the pair twist to the pairs below.
VertexValue cq_neighbor(VertexValue u, int level, int m);

// All m neighbors of u in CQ_m, ordered by level.
std::vector<VertexValue> cq_neighbors(VertexValue u, int m);

// ---------------------------------------------------------------------------
// Guest addresses
// ---------------------------------------------------------------------------

// A PQT address is "0" for the root, followed by digits in {1,2,3}; the
// parent of a non-root address is its prefix one digit shorter.
bool valid_pqt_address(std::string_view addr, int max_depth);

// All addresses of PQT_n in lexicographic order (equals preorder).
std::vector<std::string> pqt_addresses(int n);

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

enum class GraphKind { CrossedCube, Hypercube, SubQuadtree };

// Immutable after construction; safe to share for concurrent reads.
struct Graph {
    GraphKind kind = GraphKind::CrossedCube;
    int order = 0;                   // dimension m, or height n for trees
    std::vector<int> offsets;        // CSR row offsets, size N+1
    std::vector<int> adjacency;      // CSR column indices
    std::vector<std::string> labels; // vertex id -> printed label

    int vertex_count() const { return static_cast<int>(labels.size()); }
    std::size_t edge_count() const { return adjacency.size() / 2; }
    int degree(int v) const { return offsets[v + 1] - offsets[v]; }
    std::span<const int> neighbors(int v) const {
        return {adjacency.data() + offsets[v], static_cast<std::size_t>(degree(v))};
    }
    // Id of a printed label, or -1 when absent.
    int id_of(std::string_view label) const;
};

// CQ_m on 2^m vertices; vertex id equals the numeric value of its bit string.
Graph build_crossed_cube(int m);

// Standard binary hypercube Q_m (single-bit flips).
Graph build_hypercube(int m);

// Particular sub-quadtree of height n: every vertex of depth < n has exactly
// three children (suffixes 1,2,3); (3^n-1)/2 vertices. Ids are preorder ranks.
Graph build_pqt(int n);

// (3^n - 1) / 2
std::int64_t pqt_vertex_count(int n);

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

// Exact unweighted shortest-path distances from source; throws on bad id.
std::vector<int> bfs_distances(const Graph& g, int source);

// Eccentricity of every vertex via all-pairs BFS. The two variants must
// agree; the serial one is the reference kept for testing.
std::vector<int> eccentricities_serial(const Graph& g);
std::vector<int> eccentricities_parallel(const Graph& g);

// Max eccentricity; throws std::runtime_error when g is disconnected.
int diameter(const Graph& g);

} // namespace cqembed
