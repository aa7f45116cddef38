#include "cqembed/golden.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cqembed {

namespace {

const std::string kTwistNote =
    "printed path flips the top bit while keeping a twisted pair fixed; not a host edge";
const std::string kEndpointNote =
    "printed endpoint disagrees with the same table's vertex rows";

std::vector<GoldenTable> build_tables() {
    std::vector<GoldenTable> t;

    t.push_back({"F5", 2, 2,
                 {{"0", "00"}, {"01", "01"}, {"02", "10"}, {"03", "11"}},
                 {}});

    t.push_back({"T1", 3, 4,
                 {{"0", "0000"}, {"01", "0100"}, {"02", "1000"}, {"03", "1100"}},
                 {}});

    t.push_back({"T2", 4, 6,
                 {{"0", "000000"}, {"01", "010000"}, {"02", "100000"}, {"03", "110000"}},
                 {}});

    t.push_back({"T3", 5, 7,
                 {{"0", "0000000"}, {"01", "0010000"}, {"02", "1010000"}, {"03", "1000000"}},
                 {}});

    t.push_back({"T4", 6, 9,
                 {{"0", "000000000"}, {"01", "010000000"}, {"02", "100000000"}, {"03", "110000000"}},
                 {}});

    t.push_back({"T5", 8, 12,
                 {{"0", "000000000000"},
                  {"01", "001000000000"},
                  {"02", "101000000000"},
                  {"03", "100000000000"}},
                 {}});

    t.push_back({"T6", 2, 2, {},
                 {{"0", "01", {"00", "01"}, 1},
                  {"0", "02", {"00", "10"}, 1},
                  {"0", "03", {"00", "10", "11"}, 2}}});
    t.push_back({"T6", 3, 4, {},
                 {{"0", "01", {"0000", "0100"}, 1},
                  {"0", "02", {"0000", "1000"}, 1},
                  {"0", "03", {"0000", "1000", "1100"}, 2}}});
    t.push_back({"T6", 4, 6, {},
                 {{"0", "01", {"000000", "010000"}, 1},
                  {"0", "02", {"000000", "100000"}, 1},
                  {"0", "03", {"000000", "100000", "110000"}, 2}}});

    t.push_back({"T7", 5, 7, {},
                 {{"0", "01", {"0000000", "0010000"}, 1},
                  {"0", "02", {"0000000", "0010000", "1010000"}, 2, true, kTwistNote},
                  {"0", "03", {"0000000", "1000000"}, 1},
                  {"01", "011", {"0010000", "0010001"}, 1},
                  {"01", "012", {"0010000", "0110000", "0100000"}, 2},
                  {"01", "013", {"0010010", "0110000"}, 1, true, kEndpointNote},
                  {"03", "031", {"1000000", "1000001"}, 1},
                  {"03", "032", {"1000000", "1000001", "0000011"}, 2},
                  {"03", "033", {"1000000", "1000010"}, 1},
                  {"0331", "03311", {"1010010", "1010011"}, 1},
                  {"0331", "03312", {"1010010", "0010010"}, 1, true, kTwistNote},
                  {"0331", "03313", {"1010010", "0010010", "0010011"}, 2, true, kTwistNote}}});

    t.push_back({"T8", 6, 9, {},
                 {{"0", "01", {"000000000", "010000000"}, 1},
                  {"0", "02", {"000000000", "100000000"}, 1},
                  {"0", "03", {"000000000", "100000000", "110000000"}, 2}}});

    t.push_back({"T9", 8, 12, {},
                 {{"0", "01", {"000000000000", "001000000000"}, 1},
                  {"0", "02", {"000000000000", "001000000000", "101000000000"}, 2},
                  {"0", "03", {"000000000000", "100000000000"}, 1},
                  {"03", "031", {"100000000000", "100010000000"}, 1},
                  {"03", "032", {"100000000000", "100010000000", "000010000000"}, 2},
                  {"03", "033", {"100000000000", "100000000001"}, 1},
                  {"01", "011", {"001000000000", "001010000000"}, 1},
                  {"01", "012", {"001000000000", "011000000000", "010000000000"}, 2},
                  {"01", "013", {"001000000000", "011000000000"}, 1},
                  {"011", "0111", {"001010000000", "001011000000"}, 1},
                  {"011", "0112", {"001010000000", "001110000000", "001100000000"}, 2},
                  {"011", "0113", {"001010000000", "001110000000"}, 1},
                  {"0111", "01111", {"001011000000", "001011010000"}, 1},
                  {"0111", "01112", {"001011000000", "001011010000", "001010010000"}, 2, true, kTwistNote},
                  {"0111", "01113", {"001011000000", "001011000001"}, 1}}});

    return t;
}

const std::vector<GoldenTable>& tables() {
    static const std::vector<GoldenTable> t = build_tables();
    return t;
}

} // namespace

std::vector<std::string> golden_table_ids() {
    std::vector<std::string> ids;
    for (const auto& t : tables())
        if (ids.empty() || ids.back() != t.id) ids.push_back(t.id);
    return ids;
}

const GoldenTable& golden_table(std::string_view id, int n) {
    const GoldenTable* fallback = nullptr;
    for (const auto& t : tables()) {
        if (t.id != id) continue;
        if (n == 0 || t.n == n) return t;
        fallback = &t;
    }
    if (fallback)
        throw std::invalid_argument("golden table " + std::string(id) + " has no block for n=" +
                                    std::to_string(n));
    throw std::invalid_argument("unknown golden table id: " + std::string(id));
}

std::vector<RowVerdict> check_against_golden(const Embedding& e, std::string_view table_id) {
    const GoldenTable& t = golden_table(table_id, table_id == "T6" ? e.n : 0);
    if (t.n != e.n || t.m != e.m)
        throw std::invalid_argument("golden table " + t.id + " is for n=" + std::to_string(t.n) +
                                    ", m=" + std::to_string(t.m) + "; embedding has n=" +
                                    std::to_string(e.n) + ", m=" + std::to_string(e.m));

    std::vector<RowVerdict> out;
    for (const auto& row : t.vertices) {
        RowVerdict v;
        v.row = row.addr + " -> " + row.cq;
        int id = e.guest.id_of(row.addr);
        if (id < 0) {
            v.status = RowVerdict::NotCovered;
            v.detail = "address not in guest";
        } else {
            std::string ours = e.host_label(e.vertex_map[static_cast<std::size_t>(id)]);
            if (ours == row.cq) {
                v.status = RowVerdict::Match;
            } else {
                v.status = RowVerdict::Mismatch;
                v.detail = "ours: " + ours;
            }
        }
        out.push_back(std::move(v));
    }

    std::map<std::pair<int, int>, const EdgePath*> by_edge;
    for (const auto& ep : e.edge_paths) by_edge[{ep.parent, ep.child}] = &ep;

    for (const auto& row : t.edges) {
        RowVerdict v;
        std::ostringstream name;
        name << row.from << "-" << row.to << " via";
        for (const auto& s : row.path) name << " " << s;
        v.row = name.str();
        int from = e.guest.id_of(row.from);
        int to = e.guest.id_of(row.to);
        const EdgePath* ep = nullptr;
        if (from >= 0 && to >= 0) {
            auto it = by_edge.find({from, to});
            if (it != by_edge.end()) ep = it->second;
        }
        if (!ep) {
            v.status = RowVerdict::NotCovered;
            v.detail = "edge not present";
            out.push_back(std::move(v));
            continue;
        }
        std::vector<std::string> ours;
        for (VertexValue x : ep->path) ours.push_back(e.host_label(x));
        if (ours == row.path && static_cast<int>(ours.size()) - 1 == row.dilation) {
            v.status = RowVerdict::Match;
        } else {
            v.status = row.ambiguous ? RowVerdict::MismatchAmbiguous : RowVerdict::Mismatch;
            std::ostringstream d;
            d << "ours:";
            for (const auto& s : ours) d << " " << s;
            if (row.ambiguous) d << " (" << row.note << ")";
            v.detail = d.str();
        }
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace cqembed
