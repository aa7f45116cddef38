#include "doctest.h"

#include <algorithm>

#include "cqembed/embedder.hpp"
#include "cqembed/golden.hpp"
#include "cqembed/verifier.hpp"

using namespace cqembed;

namespace {

Embedding identity_self_embedding(int m) {
    Embedding e;
    e.n = m; // not a tree; only used for labels
    e.m = m;
    e.guest = build_crossed_cube(m);
    e.host = build_crossed_cube(m);
    for (int v = 0; v < e.guest.vertex_count(); ++v) {
        e.vertex_map.push_back(static_cast<VertexValue>(v));
        e.provenance.push_back({"fixed", -2});
    }
    for (int v = 0; v < e.guest.vertex_count(); ++v)
        for (int w : e.guest.neighbors(v))
            if (v < w)
                e.edge_paths.push_back(
                    {v, w, {static_cast<VertexValue>(v), static_cast<VertexValue>(w)}, false});
    return e;
}

} // namespace

TEST_CASE("rationals reduce") {
    CHECK(make_rational(256, 242) == Rational{128, 121});
    CHECK(make_rational(16, 16) == Rational{1, 1});
    CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("identity self-embedding has unit metrics") {
    MetricsReport r = verify(identity_self_embedding(4));
    CHECK(r.dilation == 1);
    CHECK(r.congestion == 1);
    CHECK(r.expansion == Rational{1, 1});
    CHECK(r.load == 1);
    CHECK(r.injective);
    CHECK(r.paths_valid);
}

TEST_CASE("metrics of the produced embeddings") {
    MetricsReport r3 = verify(embed(3));
    CHECK(r3.dilation == 2);
    CHECK(r3.injective);
    CHECK(r3.load == 1);

    MetricsReport r5 = verify(embed(5));
    CHECK(r5.dilation == 2);
    CHECK(r5.expansion == Rational{128, 121});

    // expansion is exactly 2^(m+1) / (3^n - 1)
    for (int n = 2; n <= 6; ++n) {
        std::int64_t tree = pqt_vertex_count(n) * 2 + 1; // 3^n
        Rational want = make_rational(std::int64_t{2} << dimension_for(n), tree - 1);
        CHECK(verify(embed(n)).expansion == want);
    }
}

TEST_CASE("verify recomputes from raw data, not annotations") {
    Embedding e = embed(3);
    Embedding broken = e;
    // reroute one edge to end at the wrong vertex
    broken.edge_paths[2].path = {broken.edge_paths[2].path.front(),
                                 broken.edge_paths[2].path.front() ^ 0b11u};
    CHECK_FALSE(verify(broken).paths_valid);

    Embedding dup = e;
    dup.vertex_map[3] = dup.vertex_map[4];
    MetricsReport rd = verify(dup);
    CHECK_FALSE(rd.injective);
    CHECK(rd.load == 2);
}

TEST_CASE("missing or duplicated edges invalidate the report") {
    Embedding e = embed(2);
    Embedding missing = e;
    missing.edge_paths.pop_back();
    CHECK_FALSE(verify(missing).paths_valid);
    Embedding doubled = e;
    doubled.edge_paths.push_back(doubled.edge_paths.front());
    CHECK_FALSE(verify(doubled).paths_valid);
}

TEST_CASE("certificate equals true host distances") {
    Embedding e = embed(3);
    auto cert = shortest_dilation_certificate(e);
    auto cert_serial = shortest_dilation_certificate_serial(e);
    CHECK(cert == cert_serial);
    REQUIRE(cert.size() == e.edge_paths.size());
    for (std::size_t i = 0; i < cert.size(); ++i) {
        CHECK(cert[i] >= 1);
        CHECK(cert[i] <= static_cast<int>(e.edge_paths[i].path.size()) - 1);
    }
    int f0 = e.guest.id_of("0");
    for (std::size_t i = 0; i < e.edge_paths.size(); ++i) {
        if (e.edge_paths[i].parent == f0 && e.edge_paths[i].child == e.guest.id_of("03"))
            CHECK(cert[i] == 2);
        if (e.edge_paths[i].parent == f0 && e.edge_paths[i].child == e.guest.id_of("01"))
            CHECK(cert[i] == 1);
    }

    // coincident endpoint images certify as distance zero and break injectivity
    Embedding dup = e;
    dup.vertex_map[dup.edge_paths[0].child] = dup.vertex_map[dup.edge_paths[0].parent];
    CHECK(shortest_dilation_certificate(dup)[0] == 0);
    CHECK_FALSE(verify(dup).injective);
}

TEST_CASE("golden conformance of the flat tables") {
    for (auto [n, id] : std::vector<std::pair<int, const char*>>{
             {2, "F5"}, {3, "T1"}, {4, "T2"}, {5, "T3"}, {6, "T4"}, {8, "T5"}}) {
        Embedding e = embed(n);
        for (const auto& v : check_against_golden(e, id)) CHECK(v.status == RowVerdict::Match);
    }
    for (int n : {2, 3, 4}) {
        Embedding e = embed(n);
        for (const auto& v : check_against_golden(e, "T6")) CHECK(v.status == RowVerdict::Match);
    }
    for (const auto& v : check_against_golden(embed(6), "T8")) CHECK(v.status == RowVerdict::Match);
}

TEST_CASE("golden conformance of the two-way-split tables") {
    Embedding e5 = embed(5);
    auto v7 = check_against_golden(e5, "T7");
    int hard = 0, ambiguous = 0, match = 0;
    for (const auto& v : v7) {
        if (v.status == RowVerdict::Mismatch) ++hard;
        if (v.status == RowVerdict::MismatchAmbiguous) ++ambiguous;
        if (v.status == RowVerdict::Match) ++match;
    }
    CHECK(hard == 0);
    CHECK(match >= 8); // A1, A3, B1, B2, C1, C2, C3, D1

    Embedding e8 = embed(8);
    for (const auto& v : check_against_golden(e8, "T9")) {
        CHECK(v.status != RowVerdict::Mismatch);
        CHECK(v.status != RowVerdict::NotCovered);
    }
}

TEST_CASE("golden shape mismatches are an error") {
    CHECK_THROWS_AS(check_against_golden(embed(3), "T3"), std::invalid_argument);
    CHECK_THROWS_AS(check_against_golden(embed(3), "T42"), std::invalid_argument);
}

TEST_CASE("metrics table renders every field") {
    MetricsReport r = verify(embed(3));
    std::string t = format_metrics_table(r);
    for (const char* key : {"dilation", "congestion", "expansion", "load", "injective",
                            "paths_valid", "repairs", "fallbacks", "verdict"})
        CHECK(t.find(key) != std::string::npos);
    CHECK(t.find("PASS") != std::string::npos);
}
