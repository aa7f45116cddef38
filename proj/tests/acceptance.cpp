// Acceptance suite: one test case per shipped claim, one PASS/FAIL line each.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cstdio>
#include <map>

#include "cqembed/embedder.hpp"
#include "cqembed/golden.hpp"
#include "cqembed/io.hpp"
#include "cqembed/verifier.hpp"

using namespace cqembed;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int k, const char* what, bool pass, double secs) {
    std::printf("[%s] criterion %d: %s (%.2fs)\n", pass ? "PASS" : "FAIL", k, what, secs);
    std::fflush(stdout);
}

} // namespace

TEST_CASE("1: structure counts") {
    Stopwatch sw;
    bool pass = true;
    for (int n = 1; n <= 10; ++n) {
        Graph t = build_pqt(n);
        pass &= t.vertex_count() == pqt_vertex_count(n);
        CHECK(t.vertex_count() == pqt_vertex_count(n));
    }
    for (int m = 1; m <= 12; ++m) {
        Graph g = build_crossed_cube(m);
        pass &= g.vertex_count() == (1 << m);
        CHECK(g.vertex_count() == (1 << m));
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (g.degree(v) != m) {
                pass = false;
                CHECK(g.degree(v) == m);
                break;
            }
        }
    }
    double secs = sw.seconds();
    CHECK(secs < 5.0);
    report(1, "structure counts (PQT sizes, CQ sizes and regularity)", pass && secs < 5.0, secs);
}

TEST_CASE("2: dimension table") {
    Stopwatch sw;
    const std::map<int, int> table{{2, 2}, {3, 4}, {4, 6}, {5, 7}, {6, 9}, {8, 12}, {9, 14}, {10, 16}};
    bool pass = true;
    for (auto [n, m] : table) {
        pass &= dimension_for(n) == m;
        CHECK(dimension_for(n) == m);
    }
    report(2, "dimension_for reproduces every stated (n, m) pairing", pass, sw.seconds());
}

TEST_CASE("3: diameter halving") {
    Stopwatch sw;
    bool pass = true;
    for (int m = 2; m <= 12; ++m) {
        int dcq = diameter(build_crossed_cube(m));
        int dq = diameter(build_hypercube(m));
        pass &= dcq == (m + 2) / 2 && dq == m;
        CHECK(dcq == (m + 2) / 2);
        CHECK(dq == m);
    }
    double secs = sw.seconds();
    CHECK(secs < 30.0);
    report(3, "diameter(CQ_m) = ceil((m+1)/2), diameter(Q_m) = m for m in [2,12]",
           pass && secs < 30.0, secs);
}

TEST_CASE("4: golden tables for the flat heights") {
    Stopwatch sw;
    bool pass = true;
    auto all_match = [&pass](const Embedding& e, const char* id) {
        for (const auto& v : check_against_golden(e, id)) {
            pass &= v.status == RowVerdict::Match;
            CHECK(v.status == RowVerdict::Match);
        }
    };
    Embedding e2 = embed(2), e3 = embed(3), e4 = embed(4);
    all_match(e2, "F5");
    all_match(e2, "T6");
    all_match(e3, "T1");
    all_match(e3, "T6");
    all_match(e4, "T2");
    all_match(e4, "T6");
    report(4, "embed(2..4) match the level-1 vertex and edge tables exactly", pass, sw.seconds());
}

TEST_CASE("5: dilation-two one-by-one embedding for every height up to eight") {
    Stopwatch sw;
    bool pass = true;
    for (int n = 2; n <= 8; ++n) {
        Stopwatch each;
        Embedding e = embed(n);
        MetricsReport r = verify(e);
        auto cert = shortest_dilation_certificate(e);
        bool here = r.injective && r.load == 1 && r.paths_valid && r.dilation <= 2;
        for (std::size_t i = 0; i < cert.size(); ++i) {
            here &= cert[i] <= 2 && cert[i] <= static_cast<int>(e.edge_paths[i].path.size()) - 1;
        }
        if (n == 8) {
            CHECK(each.seconds() < 60.0);
            here &= each.seconds() < 60.0;
        }
        CHECK(here);
        pass &= here;
    }
    report(5, "n in [2,8]: injective, valid host paths, dilation <= 2, BFS-certified", pass,
           sw.seconds());
}

TEST_CASE("6: ambiguity containment") {
    Stopwatch sw;
    bool pass = true;
    for (int n : {2, 3, 4}) {
        Embedding e = embed(n);
        pass &= e.repairs.empty() && e.fallback_count == 0;
        CHECK(e.repairs.empty());
        CHECK(e.fallback_count == 0);
    }
    for (int n = 5; n <= 8; ++n) {
        Embedding e = embed(n);
        MetricsReport r = verify(e);
        pass &= r.dilation <= 2 && r.paths_valid;
        CHECK(r.dilation <= 2);
        for (const auto& rec : e.repairs) {
            pass &= !rec.note.empty();
            CHECK(!rec.note.empty()); // each repair names its ambiguity
        }
    }
    report(6, "no repairs/search below height 5; above, repairs annotated and dilation <= 2",
           pass, sw.seconds());
}

TEST_CASE("7: independent search oracle") {
    Stopwatch sw;
    bool pass = true;
    for (int n : {2, 3, 4, 5}) {
        Embedding e = embed_fallback(build_pqt(n), build_crossed_cube(dimension_for(n)),
                                     {{"0", to_bit_label(0, dimension_for(n))}});
        MetricsReport r = verify(e);
        pass &= r.injective && r.paths_valid && r.dilation <= 2;
        CHECK(r.injective);
        CHECK(r.paths_valid);
        CHECK(r.dilation <= 2);
    }
    report(7, "pure search finds injective dilation-2 embeddings for n in {2,3,4,5}", pass,
           sw.seconds());
}

TEST_CASE("8: round trip") {
    Stopwatch sw;
    bool pass = true;
    for (int n : {3, 5}) {
        Embedding e = embed(n);
        Embedding back = parse_embedding(embedding_to_json(e));
        pass &= verify(back) == verify(e);
        CHECK(verify(back) == verify(e));
    }
    report(8, "export -> import -> verify yields identical metrics for n in {3,5}", pass,
           sw.seconds());
}
