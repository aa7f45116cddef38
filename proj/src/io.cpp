#include "cqembed/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cqembed {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string kind_name(GraphKind k) {
    switch (k) {
    case GraphKind::CrossedCube: return "crossed-cube";
    case GraphKind::Hypercube: return "hypercube";
    case GraphKind::SubQuadtree: return "sub-quadtree";
    }
    return "?";
}

std::vector<std::pair<int, int>> sorted_edges(const Graph& g) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edge_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int w : g.neighbors(v))
            if (v < w) edges.emplace_back(v, w);
    std::sort(edges.begin(), edges.end());
    return edges;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
    throw std::invalid_argument("embedding report: field '" + field + "': " + what);
}

} // namespace

ExportFormat parse_format(std::string_view s) {
    if (s == "dot") return ExportFormat::Dot;
    if (s == "json") return ExportFormat::Json;
    if (s == "edgelist") return ExportFormat::EdgeList;
    throw std::invalid_argument("unknown format '" + std::string(s) + "' (expected dot, json or edgelist)");
}

std::string graph_to_dot(const Graph& g, const Embedding* embedding) {
    std::set<VertexValue> images;
    if (embedding && g.kind != GraphKind::SubQuadtree)
        images.insert(embedding->vertex_map.begin(), embedding->vertex_map.end());
    std::ostringstream os;
    os << "graph {\n";
    os << "  node [shape=box];\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        os << "  \"" << g.labels[v] << "\"";
        if (!images.empty()) {
            bool used = images.count(static_cast<VertexValue>(v)) > 0;
            os << " [style=filled, fillcolor=\"" << (used ? "#9fc5e8" : "#eeeeee") << "\"]";
        }
        os << ";\n";
    }
    for (auto [a, b] : sorted_edges(g))
        os << "  \"" << g.labels[a] << "\" -- \"" << g.labels[b] << "\";\n";
    os << "}\n";
    return os.str();
}

std::string graph_to_edgelist(const Graph& g) {
    std::ostringstream os;
    for (auto [a, b] : sorted_edges(g)) os << g.labels[a] << ' ' << g.labels[b] << '\n';
    return os.str();
}

std::string graph_to_json(const Graph& g) {
    ordered_json j;
    j["kind"] = kind_name(g.kind);
    j["order"] = g.order;
    j["vertices"] = g.labels;
    auto edges = ordered_json::array();
    for (auto [a, b] : sorted_edges(g)) edges.push_back({g.labels[a], g.labels[b]});
    j["edges"] = std::move(edges);
    return j.dump(2) + "\n";
}

namespace {

ordered_json metrics_json(const MetricsReport& m) {
    return {{"dilation", m.dilation},
            {"congestion", m.congestion},
            {"expansion_num", m.expansion.num},
            {"expansion_den", m.expansion.den},
            {"load", m.load},
            {"injective", m.injective},
            {"paths_valid", m.paths_valid},
            {"repairs", m.repairs},
            {"fallbacks", m.fallbacks}};
}

} // namespace

std::string metrics_to_json(const MetricsReport& r) { return metrics_json(r).dump(2) + "\n"; }

std::string embedding_to_json(const Embedding& e) {
    ordered_json j;
    j["n"] = e.n;
    j["m"] = e.m;
    auto vm = ordered_json::array();
    for (int v = 0; v < e.guest.vertex_count(); ++v)
        vm.push_back({{"pqt", e.guest.labels[v]}, {"cq", e.host_label(e.vertex_map[v])}});
    j["vertex_map"] = std::move(vm);
    auto eps = ordered_json::array();
    for (const EdgePath& ep : e.edge_paths) {
        ordered_json row;
        row["from"] = e.guest.labels[ep.parent];
        row["to"] = e.guest.labels[ep.child];
        auto path = ordered_json::array();
        for (VertexValue x : ep.path) path.push_back(e.host_label(x));
        row["path"] = std::move(path);
        row["repaired"] = ep.repaired;
        eps.push_back(std::move(row));
    }
    j["edge_paths"] = std::move(eps);
    auto prov = ordered_json::array();
    for (int v = 0; v < e.guest.vertex_count(); ++v)
        prov.push_back({{"pqt", e.guest.labels[v]}, {"rule", e.provenance[v].rule}});
    j["provenance"] = std::move(prov);
    auto reps = ordered_json::array();
    for (const RepairRecord& r : e.repairs) {
        reps.push_back({{"parent", r.parent},
                        {"child", r.child},
                        {"prescribed", r.prescribed},
                        {"substituted", r.substituted},
                        {"note", r.note}});
    }
    j["repair_records"] = std::move(reps);
    j["metrics"] = metrics_json(verify(e));
    return j.dump(2) + "\n";
}

Embedding parse_embedding(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& ex) {
        throw std::invalid_argument(std::string("embedding report: not valid JSON: ") + ex.what());
    }
    if (!j.is_object()) schema_error("<root>", "expected an object");
    if (!j.contains("n") || !j["n"].is_number_integer()) schema_error("n", "missing integer");
    if (!j.contains("m") || !j["m"].is_number_integer()) schema_error("m", "missing integer");
    const int n = j["n"].get<int>();
    const int m = j["m"].get<int>();
    if (n < 1 || n > 12) schema_error("n", "out of range [1, 12]");
    if (m < 1 || m > 20) schema_error("m", "out of range [1, 20]");

    Embedding e;
    e.n = n;
    e.m = m;
    e.guest = build_pqt(n);
    e.host = build_crossed_cube(m);
    const int count = e.guest.vertex_count();
    e.vertex_map.assign(static_cast<std::size_t>(count), 0);
    e.provenance.assign(static_cast<std::size_t>(count), VertexPlacement{"imported", -2});

    if (!j.contains("vertex_map") || !j["vertex_map"].is_array())
        schema_error("vertex_map", "missing array");
    std::vector<char> seen(static_cast<std::size_t>(count), 0);
    for (const auto& row : j["vertex_map"]) {
        if (!row.is_object() || !row.contains("pqt") || !row.contains("cq"))
            schema_error("vertex_map", "rows need pqt and cq strings");
        std::string addr = row["pqt"].get<std::string>();
        int id = e.guest.id_of(addr);
        if (id < 0) schema_error("vertex_map.pqt", "unknown address '" + addr + "'");
        if (seen[static_cast<std::size_t>(id)])
            schema_error("vertex_map.pqt", "duplicate address '" + addr + "'");
        seen[static_cast<std::size_t>(id)] = 1;
        try {
            e.vertex_map[static_cast<std::size_t>(id)] =
                parse_bit_label(row["cq"].get<std::string>(), m);
        } catch (const std::exception& ex) {
            schema_error("vertex_map.cq", ex.what());
        }
    }
    for (int v = 0; v < count; ++v)
        if (!seen[static_cast<std::size_t>(v)])
            schema_error("vertex_map", "missing address '" + e.guest.labels[v] + "'");

    if (!j.contains("edge_paths") || !j["edge_paths"].is_array())
        schema_error("edge_paths", "missing array");
    std::set<std::pair<int, int>> edges_seen;
    for (const auto& row : j["edge_paths"]) {
        if (!row.is_object() || !row.contains("from") || !row.contains("to") || !row.contains("path"))
            schema_error("edge_paths", "rows need from, to and path");
        EdgePath ep;
        ep.parent = e.guest.id_of(row["from"].get<std::string>());
        ep.child = e.guest.id_of(row["to"].get<std::string>());
        if (ep.parent < 0 || ep.child < 0) schema_error("edge_paths", "unknown address");
        const std::string& child_label = e.guest.labels[ep.child];
        if (child_label.substr(0, child_label.size() - 1) != e.guest.labels[ep.parent])
            schema_error("edge_paths", "'" + e.guest.labels[ep.parent] + "'-'" + child_label +
                                            "' is not a guest edge");
        if (!edges_seen.insert({ep.parent, ep.child}).second)
            schema_error("edge_paths", "duplicate edge");
        if (!row["path"].is_array() || row["path"].empty())
            schema_error("edge_paths.path", "expected a non-empty array");
        for (const auto& lab : row["path"]) {
            try {
                ep.path.push_back(parse_bit_label(lab.get<std::string>(), m));
            } catch (const std::exception& ex) {
                schema_error("edge_paths.path", ex.what());
            }
        }
        if (row.contains("repaired")) ep.repaired = row["repaired"].get<bool>();
        e.edge_paths.push_back(std::move(ep));
    }
    if (static_cast<int>(e.edge_paths.size()) != count - 1)
        schema_error("edge_paths", "expected one entry per guest edge");
    std::sort(e.edge_paths.begin(), e.edge_paths.end(), [](const EdgePath& a, const EdgePath& b) {
        return std::pair(a.parent, a.child) < std::pair(b.parent, b.child);
    });

    if (j.contains("provenance")) {
        if (!j["provenance"].is_array()) schema_error("provenance", "expected array");
        for (const auto& row : j["provenance"]) {
            int id = e.guest.id_of(row.value("pqt", ""));
            if (id < 0) schema_error("provenance.pqt", "unknown address");
            e.provenance[static_cast<std::size_t>(id)].rule = row.value("rule", "imported");
        }
    }
    if (j.contains("repair_records")) {
        for (const auto& row : j["repair_records"]) {
            RepairRecord r;
            r.parent = row.value("parent", "");
            r.child = row.value("child", "");
            r.note = row.value("note", "");
            if (row.contains("prescribed"))
                r.prescribed = row["prescribed"].get<std::vector<std::string>>();
            if (row.contains("substituted"))
                r.substituted = row["substituted"].get<std::vector<std::string>>();
            e.repairs.push_back(std::move(r));
        }
    } else if (j.contains("metrics") && j["metrics"].contains("repairs")) {
        e.repairs.resize(j["metrics"]["repairs"].get<std::size_t>());
    }
    if (j.contains("metrics") && j["metrics"].contains("fallbacks"))
        e.fallback_count = j["metrics"]["fallbacks"].get<int>();
    return e;
}

Embedding import_embedding(const std::filesystem::path& source) {
    std::ifstream in(source, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open embedding report: " + source.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_embedding(buf.str());
}

std::vector<std::filesystem::path> export_bundle(const ExportBundle& bundle,
                                                 const std::filesystem::path& destination) {
    {
        std::set<std::string> names;
        for (const auto& [name, g] : bundle.graphs)
            if (!names.insert(name).second)
                throw std::invalid_argument("bundle names must be unique: " + name);
    }
    std::error_code ec;
    std::filesystem::create_directories(destination, ec);
    if (ec) throw std::runtime_error("cannot create directory " + destination.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    const char* ext = bundle.format == ExportFormat::Dot        ? ".dot"
                      : bundle.format == ExportFormat::Json     ? ".json"
                                                                : ".edges";
    for (const auto& [name, g] : bundle.graphs) {
        std::filesystem::path p = destination / (name + ext);
        switch (bundle.format) {
        case ExportFormat::Dot: write_file(p, graph_to_dot(*g, bundle.embedding)); break;
        case ExportFormat::Json: write_file(p, graph_to_json(*g)); break;
        case ExportFormat::EdgeList: write_file(p, graph_to_edgelist(*g)); break;
        }
        written.push_back(p);
    }
    if (bundle.embedding) {
        std::filesystem::path p = destination / "embedding.json";
        write_file(p, embedding_to_json(*bundle.embedding));
        written.push_back(p);
    }
    return written;
}

} // namespace cqembed
