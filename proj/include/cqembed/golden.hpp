#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cqembed/embedding.hpp"

namespace cqembed {

// Hard-coded reference rows. Rows marked ambiguous are the ones whose
// printed path is not a host path under the pair relation (a cross edge kept
// a twisted bit pair fixed) or whose printed endpoint disagrees with the
// same table's vertex row; an embedding may differ on those rows only.
struct GoldenVertexRow {
    std::string addr;
    std::string cq;
};

struct GoldenEdgeRow {
    std::string from;
    std::string to;
    std::vector<std::string> path;
    int dilation = 1;
    bool ambiguous = false;
    std::string note;
};

struct GoldenTable {
    std::string id;
    int n = 0;
    int m = 0;
    std::vector<GoldenVertexRow> vertices;
    std::vector<GoldenEdgeRow> edges;
};

// Ids: T1..T9 plus F5 (the 4-node picture for height 2). T6 carries blocks
// for n = 2, 3, 4; golden_table("T6", n) selects one.
std::vector<std::string> golden_table_ids();
const GoldenTable& golden_table(std::string_view id, int n = 0);

struct RowVerdict {
    enum Status { Match, MismatchAmbiguous, Mismatch, NotCovered };
    std::string row;
    Status status = Match;
    std::string detail;
};

// Compares the embedding against the table, row by row. Throws
// std::invalid_argument when the table's (n, m) does not match e.
std::vector<RowVerdict> check_against_golden(const Embedding& e, std::string_view table_id);

} // namespace cqembed
