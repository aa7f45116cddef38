#include "cqembed/topology.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cqembed {

bool pair_related(unsigned x, unsigned y) {
    if (x > 3 || y > 3) throw std::invalid_argument("pair_related expects 2-bit values");
    // (00,00), (10,10), (01,11), (11,01)
    return (x == y && (x == 0 || x == 2)) || (x == 1 && y == 3) || (x == 3 && y == 1);
}

bool pair_related(std::string_view x, std::string_view y) {
    return pair_related(parse_bit_label(x, 2), parse_bit_label(y, 2));
}

bool cq_adjacent(VertexValue u, VertexValue v, int m) {
    if (m < 1 || m > 20) throw std::invalid_argument("cq_adjacent: dimension out of range");
    if ((u >> m) != 0 || (v >> m) != 0)
        throw std::invalid_argument("cq_adjacent: vertex value exceeds dimension");
    if (u == v) throw std::invalid_argument("cq_adjacent: u == v");

    // Strip shared top bits; d is the dimension of the sub-cube where the
    // labels first differ.
    int d = m;
    while (((u >> (d - 1)) & 1u) == ((v >> (d - 1)) & 1u)) --d;
    if (d == 1) return true; // CQ_1 is the complete graph on two vertices

    if (d % 2 == 0 && (((u >> (d - 2)) & 1u) != ((v >> (d - 2)) & 1u))) return false;
    int top_pair_bit = (d % 2 == 0) ? d - 3 : d - 2;
    for (int i = top_pair_bit; i >= 1; i -= 2) {
        if (!pair_related((u >> (i - 1)) & 3u, (v >> (i - 1)) & 3u)) return false;
    }
    return true;
}

VertexValue cq_neighbor(VertexValue u, int level, int m) {
    if (level < 0 || level >= m) throw std::invalid_argument("cq_neighbor: level out of range");
    VertexValue v = u ^ (VertexValue{1} << level);
    // Pairs strictly below the level (and below the kept bit when the level
    // is odd) twist: 01 <-> 11, i.e. flip the high bit when the low bit is 1.
    int top_pair_bit = (level % 2 == 1) ? level - 2 : level - 1;
    for (int i = top_pair_bit; i >= 1; i -= 2) {
        if ((u >> (i - 1)) & 1u) v ^= (VertexValue{1} << i);
    }
    return v;
}

std::vector<VertexValue> cq_neighbors(VertexValue u, int m) {
    std::vector<VertexValue> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int l = 0; l < m; ++l) out.push_back(cq_neighbor(u, l, m));
    return out;
}

bool valid_pqt_address(std::string_view addr, int max_depth) {
    if (addr.empty() || addr.front() != '0') return false;
    if (static_cast<int>(addr.size()) > max_depth) return false;
    for (std::size_t i = 1; i < addr.size(); ++i)
        if (addr[i] < '1' || addr[i] > '3') return false;
    return true;
}

std::vector<std::string> pqt_addresses(int n) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(pqt_vertex_count(n)));
    // Preorder with children visited in digit order equals lexicographic order.
    std::vector<std::string> stack{"0"};
    while (!stack.empty()) {
        std::string a = std::move(stack.back());
        stack.pop_back();
        out.push_back(a);
        if (static_cast<int>(a.size()) < n) {
            for (char c : {'3', '2', '1'}) stack.push_back(a + c);
        }
    }
    return out;
}

std::int64_t pqt_vertex_count(int n) {
    std::int64_t p = 1;
    for (int i = 0; i < n; ++i) p *= 3;
    return (p - 1) / 2;
}

int Graph::id_of(std::string_view label) const {
    switch (kind) {
    case GraphKind::CrossedCube:
    case GraphKind::Hypercube: {
        if (static_cast<int>(label.size()) != order) return -1;
        for (char c : label)
            if (c != '0' && c != '1') return -1;
        return static_cast<int>(parse_bit_label(label, order));
    }
    case GraphKind::SubQuadtree: {
        auto it = std::lower_bound(labels.begin(), labels.end(), label);
        if (it == labels.end() || *it != label) return -1;
        return static_cast<int>(it - labels.begin());
    }
    }
    return -1;
}

namespace {

Graph from_edge_lists(GraphKind kind, int order, std::vector<std::string> labels,
                      const std::vector<std::vector<int>>& nbr) {
    Graph g;
    g.kind = kind;
    g.order = order;
    g.labels = std::move(labels);
    const int n = g.vertex_count();
    g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) g.offsets[v + 1] = g.offsets[v] + static_cast<int>(nbr[v].size());
    g.adjacency.reserve(static_cast<std::size_t>(g.offsets[n]));
    for (int v = 0; v < n; ++v)
        for (int w : nbr[v]) g.adjacency.push_back(w);
    return g;
}

void check_dim(int m) {
    if (m < 1 || m > 20) throw std::invalid_argument("dimension must be in [1, 20]");
}

} // namespace

Graph build_crossed_cube(int m) {
    check_dim(m);
    const int n = 1 << m;
    std::vector<std::string> labels(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        labels[v] = to_bit_label(static_cast<VertexValue>(v), m);
        auto ns = cq_neighbors(static_cast<VertexValue>(v), m);
        nbr[v].assign(ns.begin(), ns.end());
        std::sort(nbr[v].begin(), nbr[v].end());
    }
    return from_edge_lists(GraphKind::CrossedCube, m, std::move(labels), nbr);
}

Graph build_hypercube(int m) {
    check_dim(m);
    const int n = 1 << m;
    std::vector<std::string> labels(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        labels[v] = to_bit_label(static_cast<VertexValue>(v), m);
        for (int l = 0; l < m; ++l) nbr[v].push_back(v ^ (1 << l));
        std::sort(nbr[v].begin(), nbr[v].end());
    }
    return from_edge_lists(GraphKind::Hypercube, m, std::move(labels), nbr);
}

Graph build_pqt(int n) {
    if (n < 1 || n > 12) throw std::invalid_argument("sub-quadtree height must be in [1, 12]");
    std::vector<std::string> labels = pqt_addresses(n);
    const int count = static_cast<int>(labels.size());
    std::vector<std::vector<int>> nbr(static_cast<std::size_t>(count));
    for (int v = 0; v < count; ++v) {
        const std::string& a = labels[v];
        if (a.size() > 1) {
            std::string parent = a.substr(0, a.size() - 1);
            auto it = std::lower_bound(labels.begin(), labels.end(), parent);
            int p = static_cast<int>(it - labels.begin());
            nbr[v].push_back(p);
            nbr[p].push_back(v);
        }
    }
    for (auto& l : nbr) std::sort(l.begin(), l.end());
    return from_edge_lists(GraphKind::SubQuadtree, n, std::move(labels), nbr);
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    const int n = g.vertex_count();
    if (source < 0 || source >= n) throw std::out_of_range("bfs_distances: unknown source id");
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<int> frontier{source};
    dist[source] = 0;
    std::vector<int> next;
    int d = 0;
    while (!frontier.empty()) {
        ++d;
        next.clear();
        for (int v : frontier) {
            for (int w : g.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = d;
                    next.push_back(w);
                }
            }
        }
        frontier.swap(next);
    }
    return dist;
}

namespace {

// Eccentricity of one source, -1 when some vertex is unreachable.
int eccentricity_from(const Graph& g, int source, std::vector<int>& dist, std::vector<int>& q) {
    const int n = g.vertex_count();
    std::fill(dist.begin(), dist.end(), -1);
    q.clear();
    q.push_back(source);
    dist[source] = 0;
    int ecc = 0;
    std::size_t head = 0;
    while (head < q.size()) {
        int v = q[head++];
        for (int w : g.neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                ecc = dist[w];
                q.push_back(w);
            }
        }
    }
    if (static_cast<int>(q.size()) != n) return -1;
    return ecc;
}

} // namespace

std::vector<int> eccentricities_serial(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> ecc(static_cast<std::size_t>(n), -1);
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<int> q;
    q.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) ecc[v] = eccentricity_from(g, v, dist, q);
    return ecc;
}

std::vector<int> eccentricities_parallel(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> ecc(static_cast<std::size_t>(n), -1);
#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<int> dist(static_cast<std::size_t>(n));
        std::vector<int> q;
        q.reserve(static_cast<std::size_t>(n));
#pragma omp for schedule(dynamic, 16)
        for (int v = 0; v < n; ++v) ecc[v] = eccentricity_from(g, v, dist, q);
    }
#else
    ecc = eccentricities_serial(g);
#endif
    return ecc;
}

int diameter(const Graph& g) {
    auto ecc = eccentricities_parallel(g);
    int d = 0;
    for (int e : ecc) {
        if (e < 0) throw std::runtime_error("diameter: graph is disconnected");
        d = std::max(d, e);
    }
    return d;
}

} // namespace cqembed
