#include "doctest.h"

#include <map>
#include <set>

#include "cqembed/embedder.hpp"
#include "cqembed/verifier.hpp"

using namespace cqembed;

namespace {

std::map<std::string, std::string> level1(const Embedding& e) {
    std::map<std::string, std::string> out;
    for (const char* a : {"0", "01", "02", "03"})
        out[a] = e.host_label(e.vertex_map[static_cast<std::size_t>(e.guest.id_of(a))]);
    return out;
}

std::vector<std::string> path_of(const Embedding& e, const std::string& from, const std::string& to) {
    int f = e.guest.id_of(from), t = e.guest.id_of(to);
    for (const EdgePath& ep : e.edge_paths) {
        if (ep.parent == f && ep.child == t) {
            std::vector<std::string> out;
            for (VertexValue x : ep.path) out.push_back(e.host_label(x));
            return out;
        }
    }
    return {};
}

} // namespace

TEST_CASE("host dimension per guest height") {
    CHECK(dimension_for(2) == 2);
    CHECK(dimension_for(3) == 4);
    CHECK(dimension_for(4) == 6);
    CHECK(dimension_for(5) == 7);
    CHECK(dimension_for(6) == 9);
    CHECK(dimension_for(7) == 11);
    CHECK(dimension_for(8) == 12);
    CHECK(dimension_for(9) == 14);
    CHECK(dimension_for(10) == 16);
    // both branches meet at n = 8
    CHECK(dimension_for(8) == 2 * (8 - 8) + 12);
    for (int n = 2; n < 12; ++n) CHECK(dimension_for(n) <= dimension_for(n + 1));
    CHECK_THROWS_AS(dimension_for(1), std::invalid_argument);
}

TEST_CASE("alternative selection is first-fit") {
    std::vector<VertexValue> cands{5, 9, 11};
    CHECK(select_alternative(cands, [](VertexValue) { return true; }) == 0);
    CHECK(select_alternative(cands, [](VertexValue v) { return v != 5; }) == 1);
    CHECK(select_alternative(cands, [](VertexValue) { return false; }) == -1);
}

TEST_CASE("level-1 images match the reference tables") {
    CHECK(level1(embed(2)) ==
          std::map<std::string, std::string>{{"0", "00"}, {"01", "01"}, {"02", "10"}, {"03", "11"}});
    CHECK(level1(embed(3)) == std::map<std::string, std::string>{
                                  {"0", "0000"}, {"01", "0100"}, {"02", "1000"}, {"03", "1100"}});
    CHECK(level1(embed(4)) == std::map<std::string, std::string>{{"0", "000000"},
                                                                 {"01", "010000"},
                                                                 {"02", "100000"},
                                                                 {"03", "110000"}});
    CHECK(level1(embed(5)) == std::map<std::string, std::string>{{"0", "0000000"},
                                                                 {"01", "0010000"},
                                                                 {"02", "1010000"},
                                                                 {"03", "1000000"}});
    CHECK(level1(embed(6)) == std::map<std::string, std::string>{{"0", "000000000"},
                                                                 {"01", "010000000"},
                                                                 {"02", "100000000"},
                                                                 {"03", "110000000"}});
    CHECK(level1(embed(8)) == std::map<std::string, std::string>{{"0", "000000000000"},
                                                                 {"01", "001000000000"},
                                                                 {"02", "101000000000"},
                                                                 {"03", "100000000000"}});
}

TEST_CASE("level-1 routes match the reference tables") {
    Embedding e3 = embed(3);
    CHECK(path_of(e3, "0", "01") == std::vector<std::string>{"0000", "0100"});
    CHECK(path_of(e3, "0", "02") == std::vector<std::string>{"0000", "1000"});
    CHECK(path_of(e3, "0", "03") == std::vector<std::string>{"0000", "1000", "1100"});

    Embedding e4 = embed(4);
    CHECK(path_of(e4, "0", "03") == std::vector<std::string>{"000000", "100000", "110000"});

    Embedding e5 = embed(5);
    CHECK(path_of(e5, "0", "01") == std::vector<std::string>{"0000000", "0010000"});
    CHECK(path_of(e5, "0", "03") == std::vector<std::string>{"0000000", "1000000"});
    // the table's route for 0-02 keeps a twisted pair fixed across the top
    // bit, which is not an edge; the repair goes through the third child
    CHECK(path_of(e5, "0", "02") == std::vector<std::string>{"0000000", "1000000", "1010000"});
    CHECK(path_of(e5, "01", "011") == std::vector<std::string>{"0010000", "0010001"});
    CHECK(path_of(e5, "01", "012") == std::vector<std::string>{"0010000", "0110000", "0100000"});
    CHECK(path_of(e5, "01", "013") == std::vector<std::string>{"0010000", "0110000"});
    CHECK(path_of(e5, "03", "031") == std::vector<std::string>{"1000000", "1000001"});
    CHECK(path_of(e5, "03", "032") == std::vector<std::string>{"1000000", "1000001", "0000011"});
    CHECK(path_of(e5, "03", "033") == std::vector<std::string>{"1000000", "1000010"});

    Embedding e6 = embed(6);
    CHECK(path_of(e6, "0", "01") == std::vector<std::string>{"000000000", "010000000"});
    CHECK(path_of(e6, "0", "02") == std::vector<std::string>{"000000000", "100000000"});
    CHECK(path_of(e6, "0", "03") == std::vector<std::string>{"000000000", "100000000", "110000000"});
}

TEST_CASE("deep interior rows of the height-8 build") {
    Embedding e = embed(8);
    auto img = [&](const char* a) {
        return e.host_label(e.vertex_map[static_cast<std::size_t>(e.guest.id_of(a))]);
    };
    CHECK(img("031") == "100010000000");
    CHECK(img("032") == "000010000000");
    CHECK(img("033") == "100000000001");
    CHECK(img("011") == "001010000000");
    CHECK(img("012") == "010000000000");
    CHECK(img("013") == "011000000000");
    CHECK(img("0111") == "001011000000");
    CHECK(img("0112") == "001100000000");
    CHECK(img("0113") == "001110000000");
    CHECK(img("01111") == "001011010000");
    CHECK(img("01112") == "001010010000");
    CHECK(img("01113") == "001011000001");
    CHECK(path_of(e, "03", "032") ==
          std::vector<std::string>{"100000000000", "100010000000", "000010000000"});
    CHECK(path_of(e, "01", "012") ==
          std::vector<std::string>{"001000000000", "011000000000", "010000000000"});
    CHECK(path_of(e, "011", "0112") ==
          std::vector<std::string>{"001010000000", "001110000000", "001100000000"});
}

TEST_CASE("no repairs and no search below height five") {
    for (int n : {2, 3, 4}) {
        Embedding e = embed(n);
        CHECK(e.repairs.empty());
        CHECK(e.fallback_count == 0);
        for (const auto& p : e.provenance) {
            CHECK((p.rule == rule::root || p.rule == rule::flat));
        }
    }
}

TEST_CASE("every produced embedding is injective with dilation at most two") {
    for (int n = 2; n <= 7; ++n) {
        Embedding e = embed(n);
        MetricsReport r = verify(e);
        CHECK(r.injective);
        CHECK(r.load == 1);
        CHECK(r.paths_valid);
        CHECK(r.dilation <= 2);
        for (const auto& p : e.provenance) CHECK(!p.rule.empty());
        for (const auto& rec : e.repairs) CHECK(!rec.note.empty());
    }
}

TEST_CASE("the two largest accepted heights embed as well") {
    for (int n : {9, 10}) {
        MetricsReport r = verify(embed(n));
        CHECK(r.injective);
        CHECK(r.paths_valid);
        CHECK(r.dilation == 2);
        CHECK(r.fallbacks == 0);
    }
}

TEST_CASE("supernode coordinates split the label") {
    SupernodeCoord c = split_supernode(parse_bit_label("0010011", 7), 7);
    CHECK(c.prefix == "001");
    CHECK(c.addr == "0011");
    CHECK(c.prefix + c.addr == "0010011");
    CHECK_THROWS_AS(split_supernode(0, 3), std::invalid_argument);
    // the prefixes enumerate the 2^(m-4) blocks
    std::set<std::string> prefixes;
    for (VertexValue v = 0; v < (1u << 6); ++v) prefixes.insert(split_supernode(v, 6).prefix);
    CHECK(prefixes.size() == 4);
}

TEST_CASE("identical inputs give identical embeddings") {
    Embedding a = embed(5);
    Embedding b = embed(5);
    CHECK(a.vertex_map == b.vertex_map);
    REQUIRE(a.edge_paths.size() == b.edge_paths.size());
    for (std::size_t i = 0; i < a.edge_paths.size(); ++i)
        CHECK(a.edge_paths[i].path == b.edge_paths[i].path);
}

TEST_CASE("embedding preconditions") {
    CHECK_THROWS_AS(embed(1), std::invalid_argument);
    CHECK_THROWS_AS(embed(11), std::invalid_argument);
    CHECK_THROWS_AS(embed_vertices(build_pqt(3), build_crossed_cube(5)), std::invalid_argument);
    CHECK_THROWS_AS(embed_vertices(build_crossed_cube(2), build_crossed_cube(2)),
                    std::invalid_argument);
}

TEST_CASE("routing refuses images farther than two hops apart") {
    Embedding e;
    e.n = 2;
    e.m = 4;
    e.guest = build_pqt(2);
    e.host = build_crossed_cube(4);
    // 0000 and 1101 share no neighbor in CQ_4
    e.vertex_map = {parse_bit_label("0000", 4), parse_bit_label("1101", 4),
                    parse_bit_label("0001", 4), parse_bit_label("0010", 4)};
    e.provenance.assign(4, VertexPlacement{"fixed", -2});
    CHECK_THROWS_AS(route_edges(e), EmbedError);
}
