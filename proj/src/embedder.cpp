#include "cqembed/embedder.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <tuple>

#include "cqembed/search.hpp"

namespace cqembed {

int dimension_for(int n) {
    if (n < 2) throw std::invalid_argument("dimension_for requires n >= 2");
    if (n <= 8) {
        auto v = static_cast<std::uint64_t>(pqt_vertex_count(n));
        return static_cast<int>(std::bit_width(v - 1)); // ceil(log2 v)
    }
    return 2 * (n - 8) + 12;
}

int select_alternative(std::span<const VertexValue> candidates,
                       const std::function<bool(VertexValue)>& viable) {
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (viable(candidates[i])) return static_cast<int>(i);
    return -1;
}

namespace {

constexpr VertexValue NPOS = ~VertexValue{0};

// Aligned block of host vertices: values [base, base + 2^dim), base a
// multiple of 2^dim. Vertices of a block share its high bits, so adjacency
// restricted to a block is the crossed-cube rule on the low-bit suffixes.
struct Block {
    VertexValue base = 0;
    int dim = 0;

    VertexValue size() const { return VertexValue{1} << dim; }
    VertexValue origin() const { return base; }
    bool contains(VertexValue v) const { return (v >> dim) == (base >> dim); }
    Block half(unsigned b) const { return {base | (b << (dim - 1)), dim - 1}; }
    Block quarter(unsigned q) const { return {base | (q << (dim - 2)), dim - 2}; }
};

std::int64_t subtree_size(int h) { return pqt_vertex_count(h); }

struct Placer {
    const Graph& guest;
    int n;
    int m;
    std::vector<VertexValue> map_;
    std::vector<VertexPlacement> prov_;
    std::vector<char> occ_;
    std::vector<int> trail_;

    std::vector<int> parent_;
    std::vector<std::array<int, 3>> children_;
    std::vector<int> height_;
    bool trace_ = std::getenv("CQEMBED_TRACE") != nullptr;

    Placer(const Graph& g, int host_dim)
        : guest(g), n(g.order), m(host_dim),
          map_(static_cast<std::size_t>(g.vertex_count()), NPOS),
          prov_(static_cast<std::size_t>(g.vertex_count())),
          occ_(std::size_t{1} << host_dim, 0),
          parent_(static_cast<std::size_t>(g.vertex_count()), -1),
          children_(static_cast<std::size_t>(g.vertex_count()), {-1, -1, -1}),
          height_(static_cast<std::size_t>(g.vertex_count()), 0) {
        for (int v = 0; v < g.vertex_count(); ++v) {
            int depth = static_cast<int>(g.labels[v].size());
            height_[v] = n - depth + 1;
            int slot = 0;
            for (int w : g.neighbors(v)) {
                if (g.labels[w].size() > g.labels[v].size()) {
                    children_[v][slot++] = w;
                } else {
                    parent_[v] = w;
                }
            }
        }
    }

    // ----- bookkeeping -------------------------------------------------

    bool free_at(VertexValue p) const { return !occ_[p]; }

    void take(int g, VertexValue p, const char* tag, int via) {
        map_[g] = p;
        occ_[p] = 1;
        prov_[g].rule = tag;
        prov_[g].via = via;
        trail_.push_back(g);
    }

    std::size_t mark() const { return trail_.size(); }

    void rewind(std::size_t mk) {
        while (trail_.size() > mk) {
            int g = trail_.back();
            trail_.pop_back();
            occ_[map_[g]] = 0;
            map_[g] = NPOS;
            prov_[g] = {};
        }
    }

    std::int64_t free_count(Block b) const {
        std::int64_t c = 0;
        for (VertexValue v = b.base; v < b.base + b.size(); ++v) c += !occ_[v];
        return c;
    }

    // ----- host geometry ------------------------------------------------

    bool adj(VertexValue u, VertexValue v) const { return u != v && cq_adjacent(u, v, m); }

    std::vector<VertexValue> sorted_neighbors(VertexValue u) const {
        auto ns = cq_neighbors(u, m);
        std::sort(ns.begin(), ns.end());
        return ns;
    }

    VertexValue lowest_common_neighbor(VertexValue u, VertexValue v) const {
        auto nu = sorted_neighbors(u);
        auto nv = sorted_neighbors(v);
        std::vector<VertexValue> common;
        std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                              std::back_inserter(common));
        return common.empty() ? NPOS : common.front();
    }

    int dist_le2(VertexValue u, VertexValue v) const {
        if (u == v) return 0;
        if (adj(u, v)) return 1;
        return lowest_common_neighbor(u, v) != NPOS ? 2 : 3;
    }

    // (distance, value) pairs for the punctured radius-2 ball around u,
    // each vertex once at its true distance, sorted by (distance, value).
    std::vector<std::pair<int, VertexValue>> ball2(VertexValue u) const {
        auto n1 = sorted_neighbors(u);
        std::vector<VertexValue> n2;
        for (VertexValue w : n1)
            for (VertexValue x : cq_neighbors(w, m)) n2.push_back(x);
        std::sort(n2.begin(), n2.end());
        n2.erase(std::unique(n2.begin(), n2.end()), n2.end());
        std::vector<std::pair<int, VertexValue>> out;
        out.reserve(n1.size() + n2.size());
        for (VertexValue w : n1) out.emplace_back(1, w);
        for (VertexValue x : n2) {
            if (x == u) continue;
            if (std::binary_search(n1.begin(), n1.end(), x)) continue;
            out.emplace_back(2, x);
        }
        return out;
    }

    VertexValue supernode_base(VertexValue p) const {
        int s = std::min(4, m);
        return (p >> s) << s;
    }

    bool same_half(Block ctx, VertexValue a, VertexValue b) const {
        if (ctx.dim < 1) return true;
        return ((a >> (ctx.dim - 1)) & 1u) == ((b >> (ctx.dim - 1)) & 1u);
    }

    // Slot is the origin of a fully free 2-dimensional sub-block.
    bool free_pair_block(VertexValue p) const {
        if (p & 3u) return false;
        return !occ_[p] && !occ_[p + 1] && !occ_[p + 2] && !occ_[p + 3];
    }

    // ----- candidate orderings -------------------------------------------

    std::vector<VertexValue> leaf_candidates(VertexValue parent_pos, const std::vector<Block>& budget) const {
        std::vector<std::tuple<int, int, int, VertexValue>> keyed;
        for (auto [d, v] : ball2(parent_pos)) {
            if (!free_at(v) || !in_budget(budget, v)) continue;
            int block = (v >> 2) == (parent_pos >> 2) ? 0 : 1; // finish the pair block first
            int stick = supernode_base(v) == supernode_base(parent_pos) ? 0 : 1;
            keyed.emplace_back(block, d, stick, v);
        }
        std::sort(keyed.begin(), keyed.end());
        std::vector<VertexValue> out;
        for (auto& k : keyed) out.push_back(std::get<3>(k));
        return out;
    }

    std::vector<VertexValue> cluster_root_candidates(VertexValue parent_pos, const std::vector<Block>& budget,
                                                     Block ctx) const {
        std::vector<std::tuple<int, int, int, int, VertexValue>> keyed;
        for (auto [d, v] : ball2(parent_pos)) {
            if (!free_at(v) || !in_budget(budget, v)) continue;
            int anchor = free_pair_block(v) ? 0 : 1;
            int half = same_half(ctx, v, parent_pos) ? 0 : 1;
            int own = supernode_base(v) == supernode_base(parent_pos) ? 1 : 0;
            keyed.emplace_back(anchor, d, half, own, v);
        }
        std::sort(keyed.begin(), keyed.end());
        std::vector<VertexValue> out;
        for (auto& k : keyed) out.push_back(std::get<4>(k));
        return out;
    }

    static bool in_budget(const std::vector<Block>& budget, VertexValue v) {
        for (const Block& b : budget)
            if (b.contains(v)) return true;
        return false;
    }

    std::int64_t free_in_budget(const std::vector<Block>& budget) const {
        std::int64_t c = 0;
        for (const Block& b : budget) c += free_count(b);
        return c;
    }

    // First free vertex of the quarter reachable within two hops of `from`,
    // the quarter origin tried first (the rule's own anchor).
    VertexValue anchor_in_quarter(Block q, VertexValue from) const {
        std::vector<VertexValue> cands{q.origin()};
        for (auto [d, v] : ball2(from))
            if (q.contains(v) && v != q.origin()) cands.push_back(v);
        int idx = select_alternative(cands, [&](VertexValue v) {
            return free_at(v) && dist_le2(from, v) <= 2;
        });
        return idx < 0 ? NPOS : cands[static_cast<std::size_t>(idx)];
    }

    // ----- strategies ----------------------------------------------------

    bool flat_fits(int h, Block b) const {
        return b.dim >= 2 && subtree_size(h - 1) <= (std::int64_t{1} << (b.dim - 2));
    }

    bool tight(int h, Block b) const { return h >= 2 && b.dim == dimension_for(h); }

    // v unplaced: put it at the origin of B and lay its subtree inside B.
    // A prescribed direct edge that does not hold from a twisted parent
    // position degrades to a routed two-hop entry.
    bool place_subtree_in_block(int v, int h, Block B, VertexValue parent_pos, const char* tag, int via) {
        VertexValue pos = B.origin();
        if (!free_at(pos) || dist_le2(parent_pos, pos) > 2) return false;
        if (free_count(B) < subtree_size(h)) return false;
        if (via == -1 && !adj(parent_pos, pos)) via = -2;
        auto mk = mark();
        take(v, pos, tag, via);
        if (place_children(v, h, B, pos)) return true;
        rewind(mk);
        return false;
    }

    // v placed at pos inside its budget block B; place the three subtrees.
    bool place_children(int v, int h, Block B, VertexValue pos) {
        if (h <= 1) return true;
        auto mk = mark();
        if (pos == B.origin() && flat_fits(h, B)) {
            if (place_flat_children(v, h, B)) return true;
            rewind(mk);
        }
        if (tight(h, B) && B.dim >= 5) {
            if (place_deep_children(v, h, B, pos)) return true;
            rewind(mk);
            if (trace_)
                std::fprintf(stderr, "[placer] deep layout failed at %s (h=%d, pos=%s)\n",
                             guest.labels[v].c_str(), h, to_bit_label(pos, m).c_str());
        }
        if (subtree_size(h) - 1 <= 13) {
            if (place_cluster_descendants(v, {B}, B)) return true;
            rewind(mk);
        }
        if (search_subtree(v)) return true;
        rewind(mk);
        return false;
    }

    bool place_flat_children(int v, int h, Block B) {
        const auto& kids = children_[v];
        VertexValue pos = map_[v];
        auto mk = mark();
        if (!place_subtree_in_block(kids[0], h - 1, B.quarter(1), pos, rule::flat, -1) ||
            !place_subtree_in_block(kids[1], h - 1, B.quarter(2), pos, rule::flat, -1) ||
            !place_subtree_in_block(kids[2], h - 1, B.quarter(3), pos, rule::flat, kids[1])) {
            rewind(mk);
            return false;
        }
        return true;
    }

    // Quarter origins inside one half form the 4-cycle 0-1-3-2-0.
    static bool quarter_origins_adjacent(unsigned a, unsigned b) {
        return (a ^ b) == 1u || (a ^ b) == 2u;
    }

    // Sibling pair for a trident rooted in quarter `own`: the direct child
    // goes to a quarter whose origin is adjacent, the routed one next to it.
    std::vector<std::pair<unsigned, unsigned>> sibling_pairs(Block half, unsigned own,
                                                             unsigned reserved) const {
        std::vector<std::pair<unsigned, unsigned>> out; // (s3 direct, s2 via s3)
        for (unsigned s3 = 0; s3 < 4; ++s3) {
            if (s3 == own || s3 == reserved) continue;
            if (!quarter_origins_adjacent(own, s3)) continue;
            if (!free_at(half.quarter(s3).origin())) continue;
            for (unsigned s2 = 0; s2 < 4; ++s2) {
                if (s2 == own || s2 == s3 || s2 == reserved) continue;
                if (!free_at(half.quarter(s2).origin())) continue;
                out.emplace_back(s3, s2);
            }
        }
        return out;
    }

    // Two-way-split layout for exactly fitting regions. With the subtree
    // root at the region origin the anchors are exactly the level-1 rows of
    // the rule tables; at a spilled entry point the same roles are assigned
    // relative to the entry's quarter.
    bool place_deep_children(int v, int h, Block B, VertexValue pos) {
        const auto& kids = children_[v];
        unsigned hb = (pos >> (B.dim - 1)) & 1u;
        Block H = B.half(hb), O = B.half(1 - hb);
        unsigned pq = static_cast<unsigned>((pos >> (B.dim - 3)) & 3u); // quarter of pos in H

        for (unsigned ci : {1u, 2u, 3u, 0u}) {
            if (ci == pq) continue;
            auto mk = mark();

            // first child: a fresh quarter of the root's half
            VertexValue a1 = anchor_in_quarter(H.quarter(ci), pos);
            if (a1 == NPOS) continue;
            bool ok = false;
            take(kids[0], a1, rule::tight_anchor, adj(pos, a1) ? -1 : -2);
            for (auto [s3, s2] : sibling_pairs(H, ci, 4u)) {
                if (place_trident(kids[0], h - 1, H.quarter(ci), H.quarter(s2), H.quarter(s3))) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                if (trace_)
                    std::fprintf(stderr, "[placer] deep: first child trident failed at %s ci=%u\n",
                                 guest.labels[v].c_str(), ci);
                rewind(mk);
                continue;
            }

            // third child mirrors the root's quarter in the other half (and
            // pivots beside the root when that origin is taken); reserved
            // here so the second child's trident cannot take it
            unsigned c3q = 5u;
            if (pq != ci && free_at(O.quarter(pq).origin()) &&
                dist_le2(pos, O.quarter(pq).origin()) <= 2)
                c3q = pq;

            // second child mirrors the first in the other half; prescribed
            // route via the first child
            VertexValue a2 = anchor_in_quarter(O.quarter(ci), pos);
            if (a2 == NPOS) {
                rewind(mk);
                continue;
            }
            ok = false;
            take(kids[1], a2, rule::tight_anchor, kids[0]);
            for (auto [s3, s2] : sibling_pairs(O, ci, c3q)) {
                if (place_trident(kids[1], h - 1, O.quarter(ci), O.quarter(s2), O.quarter(s3))) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                rewind(mk);
                continue;
            }

            // third child: the reserved quarter, or a slot next to the root
            if (c3q < 4u) {
                VertexValue a3 = O.quarter(c3q).origin();
                take(kids[2], a3, rule::tight_anchor, adj(pos, a3) ? -1 : -2);
                if (place_c3_children(kids[2], h - 1, O.quarter(c3q), B)) return true;
                rewind(mk);
                continue;
            }
            VertexValue p3 = pivot_slot(pos, B);
            if (p3 == NPOS) {
                rewind(mk);
                continue;
            }
            take(kids[2], p3, rule::tight_spill, adj(pos, p3) ? -1 : -2);
            if (spill_children(kids[2], h - 1, B)) return true;
            rewind(mk);
        }
        return false;
    }

    VertexValue pivot_slot(VertexValue pos, Block B) const {
        VertexValue sb = supernode_base(pos);
        Block sn{sb, std::min(4, m)};
        for (auto [d, v] : ball2(pos))
            if (d == 1 && sn.contains(v) && free_at(v)) return v;
        for (auto [d, v] : ball2(pos))
            if (sn.contains(v) && free_at(v)) return v;
        for (auto [d, v] : ball2(pos))
            if (B.contains(v) && free_at(v)) return v;
        return NPOS;
    }

    // v placed at the origin of OWN; its first child nests inside OWN, the
    // other two take the sibling blocks whole.
    bool place_trident(int v, int h, Block OWN, Block S2, Block S3) {
        if (h <= 1) return true;
        const auto& kids = children_[v];
        VertexValue pos = map_[v];
        auto mk = mark();
        if (!place_nested_child(kids[0], h - 1, OWN, pos, rule::tight_anchor, OWN /*ctx*/)) {
            if (trace_)
                std::fprintf(stderr, "[placer] trident: nested child failed under %s (h=%d)\n",
                             guest.labels[v].c_str(), h);
            rewind(mk);
            return false;
        }
        if (!place_subtree_in_block(kids[2], h - 1, S3, pos, rule::flat, -1) ||
            !place_subtree_in_block(kids[1], h - 1, S2, pos, rule::flat, kids[2])) {
            if (trace_)
                std::fprintf(stderr, "[placer] trident: sibling blocks failed under %s (h=%d)\n",
                             guest.labels[v].c_str(), h);
            rewind(mk);
            return false;
        }
        return true;
    }

    // Anchor for a child sharing its parent's block, chosen by the same mode
    // ladder as place_nested_child but without laying out the subtree.
    VertexValue nested_anchor(Block OWN, VertexValue pos) const {
        if (OWN.dim <= 4) {
            for (auto [d, v] : ball2(pos))
                if (d == 1 && OWN.contains(v) && free_at(v)) return v;
            for (auto [d, v] : ball2(pos))
                if (OWN.contains(v) && free_at(v)) return v;
            return NPOS;
        }
        return anchor_in_quarter(OWN.quarter(1), pos);
    }

    // Lays out the subtree of a child already sitting at its nested anchor.
    bool place_nested_subtree(int c, int h, Block OWN, VertexValue pos, Block ctx) {
        if (h <= 1) return true;
        auto mk = mark();
        if (OWN.dim <= 4) {
            if (place_cluster_descendants(c, {OWN}, ctx)) return true;
            rewind(mk);
            return false;
        }
        if (subtree_size(h - 1) <= (std::int64_t{1} << (OWN.dim - 2))) {
            if (place_trident(c, h, OWN.quarter(1), OWN.quarter(2), OWN.quarter(3))) return true;
            rewind(mk);
        }
        if (place_spawned(c, h, ctx)) return true;
        rewind(mk);
        return false;
    }

    // Child sharing its parent's block: a low slot next to the parent at
    // supernode scale, the nested 01-quarter one level down, or the mirror
    // half of an exactly fitting block.
    bool place_nested_child(int c, int h, Block OWN, VertexValue pos, const char* tag, Block ctx) {
        auto mk = mark();
        if (OWN.dim <= 4) {
            for (auto [d, v] : ball2(pos)) {
                if (d > 1) break;
                if (!OWN.contains(v) || !free_at(v)) continue;
                take(c, v, tag, -1);
                if (place_cluster_descendants(c, {OWN}, ctx)) return true;
                rewind(mk);
            }
            for (auto [d, v] : ball2(pos)) {
                if (d == 1 || !OWN.contains(v) || !free_at(v)) continue;
                take(c, v, tag, -2);
                if (place_cluster_descendants(c, {OWN}, ctx)) return true;
                rewind(mk);
            }
            return false;
        }
        if (h >= 2 && subtree_size(h - 1) <= (std::int64_t{1} << (OWN.dim - 2))) {
            VertexValue a = anchor_in_quarter(OWN.quarter(1), pos);
            if (a != NPOS) {
                take(c, a, tag, adj(pos, a) ? -1 : -2);
                if (place_trident(c, h, OWN.quarter(1), OWN.quarter(2), OWN.quarter(3))) return true;
                rewind(mk);
            }
        }
        if (tight(h, OWN) && 1 + subtree_size(h) <= static_cast<std::int64_t>(OWN.size())) {
            unsigned hb = (pos >> (OWN.dim - 1)) & 1u;
            VertexValue a = OWN.half(1 - hb).origin();
            if (free_at(a) && dist_le2(pos, a) <= 2) {
                take(c, a, tag, adj(pos, a) ? -1 : -2);
                if (place_deep_children(c, h, OWN, a)) return true;
                rewind(mk);
            }
        }
        if (subtree_size(h) <= 13) {
            for (VertexValue cand : cluster_root_candidates(pos, {OWN}, ctx)) {
                take(c, cand, tag, adj(pos, cand) ? -1 : -2);
                if (place_cluster_descendants(c, {OWN}, ctx)) return true;
                rewind(mk);
            }
        }
        return false;
    }

    // Children of the third tight child: one nests beside it, one roots at
    // the cross neighbor of the first's image in the other half, one takes a
    // low slot and spills. All three anchors are taken before any subtree is
    // laid out, so the packing cannot eat a sibling's anchor.
    bool place_c3_children(int v, int h, Block OWN, Block B) {
        if (h <= 1) return true;
        const auto& kids = children_[v];
        VertexValue pos = map_[v];
        auto mk = mark();

        VertexValue a1 = nested_anchor(OWN, pos);
        if (a1 == NPOS) return false;
        take(kids[0], a1, rule::tight_cross, adj(pos, a1) ? -1 : -2);

        VertexValue cross = cq_neighbor(a1, B.dim - 1, m);
        bool cross_ok = B.contains(cross) && free_at(cross) && dist_le2(pos, cross) <= 2;
        if (cross_ok) take(kids[1], cross, rule::tight_cross, kids[0]);

        VertexValue slot = pivot_slot(pos, B);
        if (slot == NPOS) {
            rewind(mk);
            return false;
        }
        take(kids[2], slot, rule::tight_cross, adj(pos, slot) ? -1 : -2);

        if (!place_nested_subtree(kids[0], h - 1, OWN, pos, B)) {
            rewind(mk);
            return false;
        }
        bool second_ok = cross_ok ? place_spawned(kids[1], h - 1, B)
                                  : spill_subtree(kids[1], h - 1, pos, B, rule::tight_cross);
        if (!second_ok) {
            rewind(mk);
            return false;
        }
        if (spill_children(kids[2], h - 1, B)) return true;
        rewind(mk);
        return false;
    }

    // Dispatch for a subtree whose root is already placed at an arbitrary
    // position (cross and spill roots).
    bool place_spawned(int v, int h, Block B) {
        if (h <= 1) return true;
        VertexValue pos = map_[v];
        auto mk = mark();
        if (subtree_size(h) - 1 <= 12) {
            if (place_cluster_descendants(v, {B}, B)) return true;
            rewind(mk);
        }
        if (h >= 2) {
            int D = dimension_for(h);
            // own block origin with free siblings one level up
            if (D - 2 >= 1 && D - 2 <= B.dim && (pos & ((VertexValue{1} << (D - 2)) - 1)) == 0) {
                Block own{pos, D - 2};
                if (D <= B.dim) {
                    Block up{(pos >> D) << D, D};
                    unsigned q = (pos >> (D - 2)) & 3u;
                    if (q != 0 && B.contains(up.base)) {
                        std::array<unsigned, 2> sibs{};
                        int k = 0;
                        for (unsigned s = 1; s <= 3; ++s)
                            if (s != q) sibs[static_cast<std::size_t>(k++)] = s;
                        if (place_trident(v, h, own, up.quarter(sibs[0]), up.quarter(sibs[1]))) return true;
                        rewind(mk);
                    }
                }
            }
            if (D <= B.dim) {
                Block R{(pos >> D) << D, D};
                if (B.contains(R.base) && free_count(R) >= subtree_size(h) - 1) {
                    if (place_children(v, h, R, pos)) return true;
                    rewind(mk);
                }
            }
        }
        if (place_cluster_descendants(v, {B}, B)) return true;
        rewind(mk);
        if (search_subtree(v)) return true;
        rewind(mk);
        return false;
    }

    bool spill_children(int v, int h, Block B) {
        if (h <= 1) return true;
        auto mk = mark();
        bool ok = true;
        for (int c : children_[v]) {
            if (!spill_subtree(c, h - 1, map_[v], B, rule::tight_spill)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
        rewind(mk);
        // joint search over the whole brood when the greedy per-child pass
        // starves a later sibling
        if (subtree_size(h) - 1 <= 40) {
            if (place_cluster_descendants(v, {B}, B)) return true;
            rewind(mk);
        }
        return false;
    }

    // Place a subtree with no reserved region: small ones as clusters over
    // the free slots of the context block, larger ones into an aligned block
    // with enough room, entered within two hops of the parent image.
    bool spill_subtree(int x, int h, VertexValue parent_pos, Block B, const char* tag) {
        auto mk = mark();
        if (h == 1) {
            auto cands = leaf_candidates(parent_pos, {B});
            if (cands.empty()) return false;
            take(x, cands.front(), tag, adj(parent_pos, cands.front()) ? -1 : -2);
            return true;
        }
        if (subtree_size(h) <= 13) {
            for (VertexValue cand : cluster_root_candidates(parent_pos, {B}, B)) {
                take(x, cand, tag, adj(parent_pos, cand) ? -1 : -2);
                if (place_cluster_descendants(x, {B}, B)) return true;
                rewind(mk);
            }
            return false;
        }
        int D = dimension_for(h);
        if (D > B.dim) return false;
        std::vector<std::tuple<int, int, int, VertexValue>> keyed;
        for (auto [d, v] : ball2(parent_pos)) {
            if (!free_at(v) || !B.contains(v)) continue;
            int half = same_half(B, v, parent_pos) ? 0 : 1;
            int own = supernode_base(v) == supernode_base(parent_pos) ? 1 : 0;
            keyed.emplace_back(d, half, own, v);
        }
        std::sort(keyed.begin(), keyed.end());
        for (auto& [d, hf, ow, a] : keyed) {
            Block R{(a >> D) << D, D};
            if (!B.contains(R.base)) continue;
            if (free_count(R) < subtree_size(h)) continue;
            if (trace_)
                std::fprintf(stderr, "[placer] spill %s (h=%d) trying %s in block %s/%d\n",
                             guest.labels[x].c_str(), h, to_bit_label(a, m).c_str(),
                             to_bit_label(R.base, m).c_str(), R.dim);
            take(x, a, tag, adj(parent_pos, a) ? -1 : -2);
            if (place_children(x, h, R, a)) return true;
            rewind(mk);
        }
        return false;
    }

    // ----- cluster search --------------------------------------------------

    struct ClusterState {
        std::vector<int> order;   // descendants of the cluster root, preorder
        std::vector<Block> budget;
        Block ctx;
        long nodes = 0;
    };

    void collect_descendants(int v, std::vector<int>& out) const {
        for (int c : children_[v]) {
            if (c < 0) continue;
            out.push_back(c);
            collect_descendants(c, out);
        }
    }

    bool place_cluster_descendants(int v, std::vector<Block> budget, Block ctx) {
        ClusterState st;
        st.budget = std::move(budget);
        st.ctx = ctx;
        collect_descendants(v, st.order);
        if (free_in_budget(st.budget) < static_cast<std::int64_t>(st.order.size())) return false;
        return cluster_rec(st, 0);
    }

    bool cluster_rec(ClusterState& st, std::size_t idx) {
        if (idx == st.order.size()) return true;
        if (++st.nodes > 500000) return false;
        int x = st.order[idx];
        VertexValue P = map_[parent_[x]];
        std::vector<VertexValue> cands = height_[x] == 1
                                             ? leaf_candidates(P, st.budget)
                                             : cluster_root_candidates(P, st.budget, st.ctx);
        const char* tag = prov_[parent_[x]].rule.c_str();
        for (VertexValue cand : cands) {
            take(x, cand, tag, adj(P, cand) ? -1 : -2);
            if (cluster_feasible(st, idx + 1) && cluster_rec(st, idx + 1)) return true;
            rewind(mark() - 1);
        }
        return false;
    }

    // Sound pruning: enough free slots overall, and every placed cluster
    // vertex with unplaced children retains enough free ball-2 slots.
    bool cluster_feasible(const ClusterState& st, std::size_t next) {
        std::int64_t remaining = static_cast<std::int64_t>(st.order.size() - next);
        if (free_in_budget(st.budget) < remaining) return false;
        for (std::size_t i = 0; i < next; ++i) {
            int y = st.order[i];
            int want = 0;
            for (int c : children_[y])
                if (c >= 0 && map_[c] == NPOS) ++want;
            if (want == 0) continue;
            int have = 0;
            for (auto [d, v] : ball2(map_[y]))
                if (free_at(v) && in_budget(st.budget, v) && ++have >= want) break;
            if (have < want) return false;
        }
        return true;
    }

    // ----- last resort -----------------------------------------------------

    bool search_subtree(int v) {
        std::vector<int> todo;
        collect_descendants(v, todo);
        std::vector<int> unplaced;
        for (int x : todo)
            if (map_[x] == NPOS) unplaced.push_back(x);
        if (unplaced.empty()) return true;
        if (trace_)
            std::fprintf(stderr, "[placer] structured rules exhausted at %s (height %d, %zu left)\n",
                         guest.labels[v].c_str(), height_[v], unplaced.size());
        // modest budget: the callers iterate over alternative anchors, so a
        // stuck search should fail fast and let them move on
        std::int64_t budget = unplaced.size() <= 13 ? 2000000 : 300000;
        SearchProblem p{guest, m, map_, occ_, budget, &unplaced};
        if (!dilation2_search(p)) return false;
        for (int x : unplaced) {
            prov_[x].rule = rule::fallback;
            prov_[x].via = -2;
            trail_.push_back(x);
        }
        return true;
    }

    bool run() {
        int root = guest.id_of("0");
        take(root, 0, rule::root, -1);
        return place_children(root, n, Block{0, m}, 0);
    }
};

} // namespace

Embedding embed_vertices(const Graph& guest, const Graph& host) {
    if (guest.kind != GraphKind::SubQuadtree) throw std::invalid_argument("guest must be a sub-quadtree");
    if (host.kind != GraphKind::CrossedCube) throw std::invalid_argument("host must be a crossed cube");
    const int n = guest.order;
    if (n < 2 || n > 10) throw std::invalid_argument("embed: guest height must be in [2, 10]");
    if (host.order != dimension_for(n))
        throw std::invalid_argument("host dimension must equal dimension_for(guest height)");

    Placer placer(guest, host.order);
    if (!placer.run()) {
        // deepest frontier: first unplaced vertex in preorder
        for (int v = 0; v < guest.vertex_count(); ++v) {
            if (placer.map_[v] == NPOS)
                throw EmbedError("no injective dilation-2 placement found for vertex " + guest.labels[v]);
        }
        throw EmbedError("placement failed");
    }

    Embedding e;
    e.n = n;
    e.m = host.order;
    e.guest = guest;
    e.host = host;
    e.vertex_map = std::move(placer.map_);
    e.provenance = std::move(placer.prov_);
    e.fallback_count = 0;
    for (const auto& p : e.provenance)
        if (p.rule == rule::fallback) ++e.fallback_count;
    return e;
}

void route_edges(Embedding& e) {
    const int m = e.m;
    const Graph& g = e.guest;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (e.vertex_map[v] == NPOS) throw std::invalid_argument("route_edges: vertex map not total");
    }
    {
        std::vector<VertexValue> sorted = e.vertex_map;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("route_edges: vertex map not injective");
    }

    auto adj = [m](VertexValue a, VertexValue b) { return a != b && cq_adjacent(a, b, m); };
    auto common = [m](VertexValue a, VertexValue b) -> VertexValue {
        auto na = cq_neighbors(a, m);
        auto nb = cq_neighbors(b, m);
        std::sort(na.begin(), na.end());
        std::sort(nb.begin(), nb.end());
        std::vector<VertexValue> out;
        std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(out));
        return out.empty() ? NPOS : out.front();
    };

    e.edge_paths.clear();
    e.repairs.clear();
    for (int child = 0; child < g.vertex_count(); ++child) {
        if (g.labels[child].size() < 2) continue;
        int parent = g.id_of(g.labels[child].substr(0, g.labels[child].size() - 1));
        VertexValue P = e.vertex_map[parent], C = e.vertex_map[child];
        EdgePath ep;
        ep.parent = parent;
        ep.child = child;
        int via = e.provenance[child].via;
        std::vector<std::string> prescribed;
        if (via >= 0) {
            VertexValue W = e.vertex_map[via];
            prescribed = {to_bit_label(P, m), to_bit_label(W, m), to_bit_label(C, m)};
            if (adj(P, W) && adj(W, C)) {
                ep.path = {P, W, C};
            }
        } else if (via == -1) {
            prescribed = {to_bit_label(P, m), to_bit_label(C, m)};
            if (adj(P, C)) ep.path = {P, C};
        }
        if (ep.path.empty()) {
            if (adj(P, C)) {
                ep.path = {P, C};
            } else {
                VertexValue w = common(P, C);
                if (w == NPOS)
                    throw EmbedError("guest edge " + g.labels[parent] + "-" + g.labels[child] +
                                     " spans host distance > 2");
                ep.path = {P, w, C};
            }
            if (via != -2) {
                ep.repaired = true;
                RepairRecord r;
                r.parent = g.labels[parent];
                r.child = g.labels[child];
                r.prescribed = std::move(prescribed);
                for (VertexValue x : ep.path) r.substituted.push_back(to_bit_label(x, m));
                r.note = "rule intermediate is not adjacent under the pair relation "
                         "(cross edge on a twisted bit pair); used the lowest common neighbor";
                e.repairs.push_back(std::move(r));
            }
        }
        e.edge_paths.push_back(std::move(ep));
    }
    std::sort(e.edge_paths.begin(), e.edge_paths.end(),
              [](const EdgePath& a, const EdgePath& b) {
                  return std::tie(a.parent, a.child) < std::tie(b.parent, b.child);
              });
}

Embedding embed(int n) {
    Graph guest = build_pqt(n);
    Graph host = build_crossed_cube(dimension_for(n));
    Embedding e = embed_vertices(guest, host);
    route_edges(e);
    return e;
}

} // namespace cqembed
