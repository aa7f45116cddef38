#include <algorithm>
#include <array>
#include <stdexcept>

#include "cqembed/embedder.hpp"
#include "cqembed/search.hpp"

namespace cqembed {

namespace {

std::vector<VertexValue> sorted_neighbors(VertexValue u, int m) {
    auto ns = cq_neighbors(u, m);
    std::sort(ns.begin(), ns.end());
    return ns;
}

bool within_two(VertexValue a, VertexValue b, int m) {
    if (a == b) return false;
    if (cq_adjacent(a, b, m)) return true;
    for (VertexValue y : cq_neighbors(a, m))
        if (y != b && cq_adjacent(y, b, m)) return true;
    return false;
}

struct Searcher {
    const Graph& guest;
    int m;
    std::vector<VertexValue>& map;
    std::vector<char>& occ;

    std::vector<int> parent;
    std::vector<std::array<int, 3>> children;
    std::vector<char> subtree_free; // no pre-placed vertex inside
    std::vector<int> order;         // unplaced ids, preorder

    std::vector<int> demand;                 // unplaced children per vertex
    std::vector<int> supply;                 // free ball-2 slots per watching vertex
    std::vector<std::vector<int>> watchers;  // host slot -> watching guest ids
    std::vector<std::vector<VertexValue>> ball_of;
    std::int64_t free_slots = 0;
    std::int64_t node_limit = 0;
    std::int64_t nodes = 0;
    int deepest = 0;

    explicit Searcher(SearchProblem& p) : guest(p.guest), m(p.m), map(p.map), occ(p.occ) {
        const int n = guest.vertex_count();
        parent.assign(static_cast<std::size_t>(n), -1);
        children.assign(static_cast<std::size_t>(n), {-1, -1, -1});
        for (int v = 0; v < n; ++v) {
            int slot = 0;
            for (int w : guest.neighbors(v)) {
                if (guest.labels[w].size() > guest.labels[v].size())
                    children[v][slot++] = w;
                else
                    parent[v] = w;
            }
        }
        subtree_free.assign(static_cast<std::size_t>(n), 1);
        for (int v = n - 1; v >= 0; --v) {
            if (map[v] != kUnplaced) subtree_free[v] = 0;
            for (int c : children[v])
                if (c >= 0 && !subtree_free[c]) subtree_free[v] = 0;
        }
        if (p.only) {
            for (int v : *p.only)
                if (map[v] == kUnplaced) order.push_back(v);
            std::sort(order.begin(), order.end());
        } else {
            for (int v = 0; v < n; ++v)
                if (map[v] == kUnplaced) order.push_back(v);
        }
        std::vector<char> in_order(static_cast<std::size_t>(n), 0);
        for (int v : order) in_order[static_cast<std::size_t>(v)] = 1;
        demand.assign(static_cast<std::size_t>(n), 0);
        supply.assign(static_cast<std::size_t>(n), 0);
        ball_of.assign(static_cast<std::size_t>(n), {});
        watchers.assign(occ.size(), {});
        for (char c : occ) free_slots += !c;
        for (int v = 0; v < n; ++v) {
            for (int c : children[v])
                if (c >= 0 && in_order[static_cast<std::size_t>(c)]) ++demand[v];
            if (map[v] != kUnplaced && demand[v] > 0) register_watcher(v);
        }
    }

    std::vector<VertexValue> ball2_values(VertexValue u) const {
        auto n1 = cq_neighbors(u, m);
        std::vector<VertexValue> out(n1.begin(), n1.end());
        for (VertexValue w : n1)
            for (VertexValue x : cq_neighbors(w, m)) out.push_back(x);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        out.erase(std::remove(out.begin(), out.end(), u), out.end());
        return out;
    }

    void register_watcher(int v) {
        ball_of[v] = ball2_values(map[v]);
        int s = 0;
        for (VertexValue x : ball_of[v]) {
            if (!occ[x]) ++s;
            watchers[x].push_back(v);
        }
        supply[v] = s;
    }

    void unregister_watcher(int v) {
        for (VertexValue x : ball_of[v]) watchers[x].pop_back();
        ball_of[v].clear();
    }

    // Returns false when some watcher's remaining supply drops below its
    // demand; the placement still happens and must be undone by the caller.
    // The parent's demand is settled first: the slot its child just took
    // does not count against it.
    bool place(int v, VertexValue x) {
        map[v] = x;
        occ[x] = 1;
        --free_slots;
        if (parent[v] >= 0) --demand[parent[v]];
        bool ok = true;
        for (int y : watchers[x])
            if (--supply[y] < demand[y]) ok = false;
        if (demand[v] > 0) {
            register_watcher(v);
            if (supply[v] < demand[v]) ok = false;
        }
        return ok;
    }

    void unplace(int v) {
        VertexValue x = map[v];
        if (demand[v] > 0) unregister_watcher(v);
        occ[x] = 0;
        ++free_slots;
        for (int y : watchers[x]) ++supply[y];
        if (parent[v] >= 0) ++demand[parent[v]];
        map[v] = kUnplaced;
    }

    // Smallest admissible image: sibling subtrees with no pre-placed vertex
    // are interchangeable, so their root images are forced increasing.
    VertexValue symmetry_bound(int v) const {
        if (parent[v] < 0 || !subtree_free[v]) return 0;
        VertexValue bound = 0;
        for (int s : children[parent[v]]) {
            if (s == v) break;
            if (s >= 0 && subtree_free[s] && map[s] != kUnplaced && map[s] + 1 > bound)
                bound = map[s] + 1;
        }
        return bound;
    }

    bool feasible_neighbors(int v, VertexValue x) const {
        for (int w : guest.neighbors(v)) {
            if (w == parent[v] || map[w] == kUnplaced) continue;
            if (x == map[w] || !within_two(x, map[w], m)) return false;
        }
        return true;
    }

    bool rec(std::size_t idx) {
        deepest = std::max(deepest, static_cast<int>(idx));
        if (idx == order.size()) return true;
        if (node_limit > 0 && ++nodes > node_limit) return false;
        if (free_slots < static_cast<std::int64_t>(order.size() - idx)) return false;
        int v = order[idx];
        int p = parent[v];
        VertexValue bound = symmetry_bound(v);

        auto try_candidate = [&](VertexValue x) -> bool {
            if (occ[x] || x < bound) return false;
            if (!feasible_neighbors(v, x)) return false;
            if (place(v, x) && rec(idx + 1)) return true;
            unplace(v);
            return false;
        };

        if (p < 0 || map[p] == kUnplaced) {
            for (VertexValue x = 0; x < (VertexValue{1} << m); ++x)
                if (try_candidate(x)) return true;
            return false;
        }
        VertexValue pp = map[p];
        auto n1 = sorted_neighbors(pp, m);
        for (VertexValue x : n1)
            if (try_candidate(x)) return true;
        std::vector<VertexValue> n2;
        for (VertexValue w : n1)
            for (VertexValue x : cq_neighbors(w, m)) n2.push_back(x);
        std::sort(n2.begin(), n2.end());
        n2.erase(std::unique(n2.begin(), n2.end()), n2.end());
        for (VertexValue x : n2) {
            if (x == pp || std::binary_search(n1.begin(), n1.end(), x)) continue;
            if (try_candidate(x)) return true;
        }
        return false;
    }
};

} // namespace

bool dilation2_search(SearchProblem& p) {
    Searcher s(p);
    s.node_limit = p.node_limit;
    bool ok = s.rec(0);
    p.deepest = s.deepest;
    return ok;
}

Embedding embed_fallback(const Graph& guest, const Graph& host,
                         const std::vector<std::pair<std::string, std::string>>& fixed) {
    if (guest.kind != GraphKind::SubQuadtree) throw std::invalid_argument("guest must be a sub-quadtree");
    if (host.kind != GraphKind::CrossedCube) throw std::invalid_argument("host must be a crossed cube");
    if (static_cast<std::int64_t>(guest.vertex_count()) > (std::int64_t{1} << host.order))
        throw std::invalid_argument("host too small for guest");

    const int n = guest.vertex_count();
    std::vector<VertexValue> map(static_cast<std::size_t>(n), kUnplaced);
    std::vector<char> occ(std::size_t{1} << host.order, 0);
    for (const auto& [addr, label] : fixed) {
        int id = guest.id_of(addr);
        if (id < 0) throw std::invalid_argument("fixed address not in guest: " + addr);
        VertexValue x = parse_bit_label(label, host.order);
        if (map[id] != kUnplaced || occ[x])
            throw std::invalid_argument("fixed map is not injective at " + addr);
        map[id] = x;
        occ[x] = 1;
    }
    for (int v = 0; v < n; ++v) {
        if (map[v] == kUnplaced || guest.labels[v].size() < 2) continue;
        int p = guest.id_of(guest.labels[v].substr(0, guest.labels[v].size() - 1));
        if (map[p] == kUnplaced) continue;
        if (!within_two(map[p], map[v], host.order))
            throw std::invalid_argument("fixed map is not dilation-feasible at " + guest.labels[v]);
    }

    std::vector<char> was_fixed(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) was_fixed[v] = map[v] != kUnplaced;

    SearchProblem prob{guest, host.order, map, occ};
    if (!dilation2_search(prob)) {
        std::string frontier = "(start)";
        int seen = 0;
        for (int v = 0; v < n && seen < prob.deepest; ++v) {
            if (was_fixed[v]) continue;
            frontier = guest.labels[v];
            ++seen;
        }
        throw EmbedError("no dilation-2 extension; deepest frontier reached: " + frontier);
    }

    Embedding e;
    e.n = guest.order;
    e.m = host.order;
    e.guest = guest;
    e.host = host;
    e.vertex_map = std::move(map);
    e.provenance.resize(static_cast<std::size_t>(n));
    e.fallback_count = 0;
    for (int v = 0; v < n; ++v) {
        e.provenance[v].rule = was_fixed[v] ? rule::fixed : rule::fallback;
        e.provenance[v].via = -2;
        if (!was_fixed[v]) ++e.fallback_count;
    }
    route_edges(e);
    return e;
}

} // namespace cqembed
