#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cqembed/embedding.hpp"

namespace cqembed {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool operator==(const Rational&) const = default;
};

Rational make_rational(std::int64_t num, std::int64_t den);

struct MetricsReport {
    int dilation = 0;
    int congestion = 0;
    Rational expansion;
    int load = 0;
    bool injective = false;
    bool paths_valid = false;
    int repairs = 0;
    int fallbacks = 0;

    bool operator==(const MetricsReport&) const = default;
    bool ok() const { return injective && paths_valid && dilation <= 2; }
};

// Recomputes every metric from the raw graphs; the embedder's bookkeeping is
// treated as untrusted annotation (only the repair and fallback counts are
// copied through). Never throws on a bad embedding: failures show up as
// false/exceeded fields.
MetricsReport verify(const Embedding& e);

// Exact host BFS distance between the endpoint images of every guest edge,
// in edge_paths order. The serial variant is the reference implementation;
// the default one runs the per-source BFS sweeps in parallel.
std::vector<int> shortest_dilation_certificate(const Embedding& e);
std::vector<int> shortest_dilation_certificate_serial(const Embedding& e);

// Aligned plain-text rendering, one metric per line plus a verdict.
std::string format_metrics_table(const MetricsReport& r);

} // namespace cqembed
