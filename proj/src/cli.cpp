#include "cqembed/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cqembed/embedder.hpp"
#include "cqembed/golden.hpp"
#include "cqembed/io.hpp"
#include "cqembed/verifier.hpp"

namespace cqembed {

namespace {

int max_dimension() {
    if (const char* env = std::getenv("CQEMBED_MAX_DIM")) {
        int v = std::atoi(env);
        if (v >= 1 && v <= 20) return v;
    }
    return 16;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + out_path);
    f << text;
}

std::string render_graph(const Graph& g, ExportFormat fmt) {
    switch (fmt) {
    case ExportFormat::Dot: return graph_to_dot(g);
    case ExportFormat::Json: return graph_to_json(g);
    case ExportFormat::EdgeList: return graph_to_edgelist(g);
    }
    return {};
}

const char* verdict_name(RowVerdict::Status s) {
    switch (s) {
    case RowVerdict::Match: return "match";
    case RowVerdict::MismatchAmbiguous: return "mismatch-ambiguous";
    case RowVerdict::Mismatch: return "MISMATCH";
    case RowVerdict::NotCovered: return "not-covered";
    }
    return "?";
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"crossed-cube / sub-quadtree embedding toolkit"};
    app.require_subcommand(1);

    int m = 0, n = 0;
    std::string out_path, in_path, format = "dot", table;

    auto* gen_cq = app.add_subcommand("gen-cq", "generate a crossed cube CQ_m");
    gen_cq->add_option("--m", m, "dimension")->required();
    gen_cq->add_option("--out", out_path, "output file (default stdout)");
    gen_cq->add_option("--format", format, "dot|json|edgelist");

    auto* gen_q = app.add_subcommand("gen-q", "generate a hypercube Q_m");
    gen_q->add_option("--m", m, "dimension")->required();
    gen_q->add_option("--out", out_path, "output file (default stdout)");
    gen_q->add_option("--format", format, "dot|json|edgelist");

    auto* gen_pqt = app.add_subcommand("gen-pqt", "generate a particular sub-quadtree PQT_n");
    gen_pqt->add_option("--n", n, "height")->required();
    gen_pqt->add_option("--out", out_path, "output file (default stdout)");
    gen_pqt->add_option("--format", format, "dot|json|edgelist");

    auto* embed_cmd = app.add_subcommand("embed", "embed PQT_n into CQ_m and emit the report");
    embed_cmd->add_option("--n", n, "guest height")->required();
    embed_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "check an embedding report");
    verify_cmd->add_option("--in", in_path, "embedding report (json)")->required();

    bool metrics_json = false;
    auto* metrics_cmd = app.add_subcommand("metrics", "print the metrics table");
    metrics_cmd->add_option("--in", in_path, "embedding report (json)");
    metrics_cmd->add_option("--n", n, "embed this height instead of reading a report");
    metrics_cmd->add_flag("--json", metrics_json, "emit json instead of the table");

    auto* export_cmd = app.add_subcommand("export", "write guest, host and embedding files");
    export_cmd->add_option("--n", n, "guest height")->required();
    export_cmd->add_option("--format", format, "dot|json|edgelist");
    export_cmd->add_option("--out", out_path, "destination directory")->required();

    auto* golden_cmd = app.add_subcommand("golden-check", "compare an embedding against a reference table");
    golden_cmd->add_option("--n", n, "guest height")->required();
    golden_cmd->add_option("--table", table, "T1..T9 or F5")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    const int cap = max_dimension();
    try {
        if (gen_cq->parsed() || gen_q->parsed()) {
            if (m > cap)
                throw std::invalid_argument("dimension " + std::to_string(m) + " exceeds the cap " +
                                            std::to_string(cap) + " (override with CQEMBED_MAX_DIM)");
            Graph g = gen_cq->parsed() ? build_crossed_cube(m) : build_hypercube(m);
            emit(render_graph(g, parse_format(format)), out_path, out);
            return 0;
        }
        if (gen_pqt->parsed()) {
            Graph g = build_pqt(n);
            emit(render_graph(g, parse_format(format)), out_path, out);
            return 0;
        }
        if (embed_cmd->parsed()) {
            if (dimension_for(n) > cap)
                throw std::invalid_argument("host dimension " + std::to_string(dimension_for(n)) +
                                            " exceeds the cap " + std::to_string(cap) +
                                            " (override with CQEMBED_MAX_DIM)");
            Embedding e = embed(n);
            emit(embedding_to_json(e), out_path, out);
            return 0;
        }
        if (verify_cmd->parsed()) {
            Embedding e = import_embedding(in_path);
            MetricsReport r = verify(e);
            out << format_metrics_table(r);
            return r.ok() ? 0 : 1;
        }
        if (metrics_cmd->parsed()) {
            if (in_path.empty() && n == 0)
                throw std::invalid_argument("metrics needs --in or --n");
            Embedding e = in_path.empty() ? embed(n) : import_embedding(in_path);
            MetricsReport r = verify(e);
            out << (metrics_json ? metrics_to_json(r) : format_metrics_table(r));
            return 0;
        }
        if (export_cmd->parsed()) {
            Embedding e = embed(n);
            ExportBundle bundle;
            bundle.graphs = {{"pqt" + std::to_string(e.n), &e.guest},
                             {"cq" + std::to_string(e.m), &e.host}};
            bundle.embedding = &e;
            bundle.format = parse_format(format);
            for (const auto& p : export_bundle(bundle, out_path)) out << p.string() << "\n";
            return 0;
        }
        if (golden_cmd->parsed()) {
            Embedding e = embed(n);
            auto verdicts = check_against_golden(e, table);
            int hard = 0;
            for (const auto& v : verdicts) {
                out << verdict_name(v.status) << "  " << v.row;
                if (!v.detail.empty()) out << "  [" << v.detail << "]";
                out << "\n";
                if (v.status == RowVerdict::Mismatch) ++hard;
            }
            out << (hard == 0 ? "OK" : "FAILED") << " (" << verdicts.size() << " rows, " << hard
                << " hard mismatches)\n";
            return hard == 0 ? 0 : 1;
        }
    } catch (const EmbedError& ex) {
        err << "embedding failed: " << ex.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

} // namespace cqembed
