#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "cqembed/embedder.hpp"
#include "cqembed/io.hpp"
#include "cqembed/verifier.hpp"

using namespace cqembed;

TEST_CASE("edge list of the four-cycle") {
    CHECK(graph_to_edgelist(build_crossed_cube(2)) == "00 01\n00 10\n01 11\n10 11\n");
}

TEST_CASE("dot output lists vertices and colors embedded images") {
    Embedding e = embed(2);
    std::string plain = graph_to_dot(e.host);
    CHECK(plain.find("\"00\" -- \"01\"") != std::string::npos);
    CHECK(plain.find("fillcolor") == std::string::npos);
    std::string colored = graph_to_dot(e.host, &e);
    CHECK(colored.find("fillcolor") != std::string::npos);

    Embedding e3 = embed(3);
    std::string host_dot = graph_to_dot(e3.host, &e3);
    // 13 of 16 host vertices are images; three stay unused-colored
    CHECK(std::count(host_dot.begin(), host_dot.end(), '\n') > 16);
    CHECK(host_dot.find("#eeeeee") != std::string::npos);
    CHECK(host_dot.find("#9fc5e8") != std::string::npos);
}

TEST_CASE("report round-trips through json") {
    for (int n : {3, 5}) {
        Embedding e = embed(n);
        Embedding back = parse_embedding(embedding_to_json(e));
        CHECK(back.n == e.n);
        CHECK(back.m == e.m);
        CHECK(back.vertex_map == e.vertex_map);
        REQUIRE(back.edge_paths.size() == e.edge_paths.size());
        for (std::size_t i = 0; i < e.edge_paths.size(); ++i) {
            CHECK(back.edge_paths[i].parent == e.edge_paths[i].parent);
            CHECK(back.edge_paths[i].child == e.edge_paths[i].child);
            CHECK(back.edge_paths[i].path == e.edge_paths[i].path);
        }
        CHECK(verify(back) == verify(e));
    }
}

TEST_CASE("schema violations name the offending field") {
    Embedding e = embed(3);
    auto j = nlohmann::json::parse(embedding_to_json(e));

    auto expect_error_naming = [](const std::string& text, const std::string& field) {
        try {
            parse_embedding(text);
            FAIL_CHECK("expected a schema error naming " << field);
        } catch (const std::invalid_argument& ex) {
            CHECK(std::string(ex.what()).find(field) != std::string::npos);
        }
    };

    auto corrupt = j;
    corrupt["vertex_map"][1]["pqt"] = corrupt["vertex_map"][2]["pqt"]; // duplicate address
    expect_error_naming(corrupt.dump(), "vertex_map.pqt");

    corrupt = j;
    corrupt.erase("edge_paths");
    expect_error_naming(corrupt.dump(), "edge_paths");

    corrupt = j;
    corrupt["vertex_map"][0]["cq"] = "01"; // wrong length
    CHECK_THROWS_AS(parse_embedding(corrupt.dump()), std::invalid_argument);

    CHECK_THROWS_AS(parse_embedding("not json"), std::invalid_argument);
}

TEST_CASE("non-injective and invalid-hop reports load and are flagged by verify") {
    Embedding e = embed(3);
    auto j = nlohmann::json::parse(embedding_to_json(e));

    auto warped = j;
    warped["vertex_map"][1]["cq"] = warped["vertex_map"][2]["cq"]; // two addresses, one image
    Embedding loaded = parse_embedding(warped.dump());
    CHECK_FALSE(verify(loaded).injective);

    warped = j;
    warped["edge_paths"][0]["path"] = {j["edge_paths"][0]["path"][0], "1111"}; // not an edge hop
    Embedding hop = parse_embedding(warped.dump());
    CHECK_FALSE(verify(hop).paths_valid);
}

TEST_CASE("bundle export writes deterministic files") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "cqembed_io_test";
    fs::remove_all(dir);

    ExportBundle empty;
    CHECK(export_bundle(empty, dir).empty()); // zero files, success

    Embedding e = embed(3);
    ExportBundle bundle;
    bundle.graphs = {{"pqt3", &e.guest}, {"cq4", &e.host}};
    bundle.embedding = &e;
    bundle.format = ExportFormat::Dot;
    auto files = export_bundle(bundle, dir);
    CHECK(files.size() == 3); // two graphs + the report
    for (const auto& f : files) CHECK(fs::exists(f));

    auto again = export_bundle(bundle, dir);
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::ifstream a(files[i]), b(again[i]);
        std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
        std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
        CHECK(sa == sb);
    }

    ExportBundle dup;
    dup.graphs = {{"g", &e.guest}, {"g", &e.host}};
    CHECK_THROWS_AS(export_bundle(dup, dir), std::invalid_argument);
    fs::remove_all(dir);
}

TEST_CASE("format names parse") {
    CHECK(parse_format("dot") == ExportFormat::Dot);
    CHECK(parse_format("json") == ExportFormat::Json);
    CHECK(parse_format("edgelist") == ExportFormat::EdgeList);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}
