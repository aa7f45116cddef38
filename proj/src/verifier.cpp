#include "cqembed/verifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cqembed {

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    std::int64_t g = std::gcd(num, den);
    if (g == 0) g = 1;
    return {num / g, den / g};
}

namespace {

bool hop_valid(VertexValue a, VertexValue b, int m) {
    if (a == b) return false;
    if ((a >> m) != 0 || (b >> m) != 0) return false;
    return cq_adjacent(a, b, m);
}

} // namespace

MetricsReport verify(const Embedding& e) {
    MetricsReport r;
    r.repairs = static_cast<int>(e.repairs.size());
    r.fallbacks = e.fallback_count;

    const int guest_n = e.guest.vertex_count();
    r.expansion = make_rational(e.host.vertex_count(), guest_n);

    // injectivity and load from the raw map
    std::vector<VertexValue> images(e.vertex_map.begin(), e.vertex_map.end());
    std::sort(images.begin(), images.end());
    int load = images.empty() ? 0 : 1;
    int run = 1;
    bool injective = static_cast<int>(images.size()) == guest_n && guest_n > 0;
    for (std::size_t i = 1; i < images.size(); ++i) {
        if (images[i] == images[i - 1]) {
            ++run;
            injective = false;
        } else {
            run = 1;
        }
        load = std::max(load, run);
    }
    for (VertexValue v : images)
        if ((v >> e.m) != 0) injective = false;
    r.injective = injective;
    r.load = load;

    // path validity: every guest edge exactly once, endpoints are the
    // images, hops are host edges, lengths in {1, 2}
    bool valid = true;
    std::map<std::pair<int, int>, int> seen;
    for (const EdgePath& ep : e.edge_paths)
        ++seen[{std::min(ep.parent, ep.child), std::max(ep.parent, ep.child)}];
    std::size_t guest_edges = 0;
    for (int v = 0; v < guest_n; ++v) {
        for (int w : e.guest.neighbors(v)) {
            if (w <= v) continue;
            ++guest_edges;
            auto it = seen.find({v, w});
            if (it == seen.end() || it->second != 1) valid = false;
        }
    }
    if (e.edge_paths.size() != guest_edges) valid = false;

    int dilation = 0;
    std::map<std::pair<VertexValue, VertexValue>, int> edge_use;
    for (const EdgePath& ep : e.edge_paths) {
        const auto& path = ep.path;
        if (path.size() < 2 || path.size() > 3) {
            valid = false;
            continue;
        }
        if (ep.parent < 0 || ep.parent >= guest_n || ep.child < 0 || ep.child >= guest_n) {
            valid = false;
            continue;
        }
        if (path.front() != e.vertex_map[ep.parent] || path.back() != e.vertex_map[ep.child])
            valid = false;
        for (std::size_t i = 1; i < path.size(); ++i) {
            if (!hop_valid(path[i - 1], path[i], e.m)) valid = false;
            VertexValue a = std::min(path[i - 1], path[i]);
            VertexValue b = std::max(path[i - 1], path[i]);
            ++edge_use[{a, b}];
        }
        dilation = std::max(dilation, static_cast<int>(path.size()) - 1);
    }
    r.paths_valid = valid;
    r.dilation = dilation;
    for (const auto& [edge, uses] : edge_use) r.congestion = std::max(r.congestion, uses);
    return r;
}

namespace {

std::vector<int> certificate_impl(const Embedding& e, bool parallel) {
    // one BFS per distinct parent image
    std::vector<VertexValue> sources;
    sources.reserve(e.edge_paths.size());
    for (const EdgePath& ep : e.edge_paths) sources.push_back(e.vertex_map[ep.parent]);
    std::vector<VertexValue> uniq = sources;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

    std::vector<std::vector<int>> dist(uniq.size());
    auto run_bfs = [&](std::size_t i) {
        int src = static_cast<int>(uniq[i]);
        dist[i] = bfs_distances(e.host, src);
    };
    const std::int64_t count = static_cast<std::int64_t>(uniq.size());
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < count; ++i) run_bfs(static_cast<std::size_t>(i));
#else
        for (std::int64_t i = 0; i < count; ++i) run_bfs(static_cast<std::size_t>(i));
#endif
    } else {
        for (std::int64_t i = 0; i < count; ++i) run_bfs(static_cast<std::size_t>(i));
    }

    std::vector<int> out;
    out.reserve(e.edge_paths.size());
    for (const EdgePath& ep : e.edge_paths) {
        auto it = std::lower_bound(uniq.begin(), uniq.end(), e.vertex_map[ep.parent]);
        out.push_back(dist[static_cast<std::size_t>(it - uniq.begin())]
                          [static_cast<std::size_t>(e.vertex_map[ep.child])]);
    }
    return out;
}

} // namespace

std::vector<int> shortest_dilation_certificate(const Embedding& e) {
    return certificate_impl(e, true);
}

std::vector<int> shortest_dilation_certificate_serial(const Embedding& e) {
    return certificate_impl(e, false);
}

std::string format_metrics_table(const MetricsReport& r) {
    std::ostringstream os;
    auto row = [&os](const std::string& k, const std::string& v) {
        os << k;
        for (std::size_t i = k.size(); i < 12; ++i) os << ' ';
        os << v << '\n';
    };
    row("dilation", std::to_string(r.dilation));
    row("congestion", std::to_string(r.congestion));
    row("expansion", std::to_string(r.expansion.num) + "/" + std::to_string(r.expansion.den));
    row("load", std::to_string(r.load));
    row("injective", r.injective ? "yes" : "no");
    row("paths_valid", r.paths_valid ? "yes" : "no");
    row("repairs", std::to_string(r.repairs));
    row("fallbacks", std::to_string(r.fallbacks));
    row("verdict", r.ok() ? "PASS" : "FAIL");
    return os.str();
}

} // namespace cqembed
