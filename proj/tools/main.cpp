#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "maxrank/analysis.hpp"
#include "maxrank/compare.hpp"
#include "maxrank/graph.hpp"
#include "maxrank/io.hpp"
#include "maxrank/oracle.hpp"
#include "maxrank/rank.hpp"
#include "maxrank/synth.hpp"
#include "maxrank/util.hpp"

namespace fs = std::filesystem;
using namespace maxrank;

namespace {

constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

struct Options {
    std::string input;
    double damping = 0.85;
    double lambda = 0.0;
    std::vector<double> lambdas;
    double tol = 1e-10;
    std::size_t max_iters = 1000;
    std::string teleport = "uniform";
    std::string out;
    std::string format = "csv";
    std::vector<std::size_t> top_k;
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = machine parallelism

    // synth only
    std::string generator;
    std::size_t nodes = 0;
    double param = 0.0;
};

int effective_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Every flag can also come from the environment as MAXRANK_<FLAG> (dashes
// mapped to underscores); explicit flags win.
void add_common(CLI::App* cmd, Options& o, bool needs_lambda_list) {
    cmd->add_option("--input", o.input, "edge-list file (gzip detected automatically)")
        ->envname("MAXRANK_INPUT")
        ->required();
    cmd->add_option("--damping", o.damping, "damping factor c")->envname("MAXRANK_DAMPING");
    if (needs_lambda_list)
        cmd->add_option("--lambdas", o.lambdas, "comma-separated mixing weights")
            ->envname("MAXRANK_LAMBDAS")
            ->delimiter(',')
            ->required();
    else
        cmd->add_option("--lambda", o.lambda, "best-backlink mixing weight")
            ->envname("MAXRANK_LAMBDA");
    cmd->add_option("--tol", o.tol, "1-norm stopping threshold")->envname("MAXRANK_TOL");
    cmd->add_option("--max-iters", o.max_iters, "iteration cap")->envname("MAXRANK_MAX_ITERS");
    cmd->add_option("--teleport", o.teleport, "'uniform' or a CSV file of id,probability")
        ->envname("MAXRANK_TELEPORT");
    cmd->add_option("--out", o.out, "output directory")->envname("MAXRANK_OUT")->required();
    cmd->add_option("--format", o.format, "csv or json")
        ->envname("MAXRANK_FORMAT")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", o.threads, "worker threads (0 = machine parallelism)")
        ->envname("MAXRANK_THREADS");
}

Graph load_graph(const Options& o) {
    return parse_edge_list(io::read_text_auto(o.input));
}

RankParams make_params(const Options& o, const Graph& g, double lambda) {
    RankParams p;
    p.damping = o.damping;
    p.lambda = lambda;
    p.tol = o.tol;
    p.max_iters = o.max_iters;
    if (o.teleport != "uniform") {
        std::ifstream in(o.teleport);
        if (!in) throw std::runtime_error("cannot open teleport file: " + o.teleport);
        p.teleport = io::load_teleport_csv(in, g.node_count());
    }
    return p;
}

io::Meta base_meta(const Options& o, const std::string& command) {
    io::Meta meta;
    meta.emplace_back("command", command);
    meta.emplace_back("input", o.input);
    meta.emplace_back("damping", format_double(o.damping));
    if (command == "compare" || command == "sweep") {
        std::string lams;
        for (double l : o.lambdas) {
            if (!lams.empty()) lams += ' ';
            lams += format_double(l);
        }
        meta.emplace_back("lambdas", lams);
    } else {
        meta.emplace_back("lambda", format_double(o.lambda));
    }
    meta.emplace_back("tol", format_double(o.tol));
    meta.emplace_back("max_iters", std::to_string(o.max_iters));
    meta.emplace_back("teleport", o.teleport);
    meta.emplace_back("format", o.format);
    return meta;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path.string());
    return out;
}

fs::path ensure_out_dir(const Options& o) {
    fs::path dir(o.out);
    fs::create_directories(dir);
    return dir;
}

int cmd_rank(const Options& o) {
    Graph g = load_graph(o);
    RankParams params = make_params(o, g, o.lambda);
    RankResult result = solve(g, params, effective_threads(o.threads));

    fs::path dir = ensure_out_dir(o);
    io::Meta meta = base_meta(o, "rank");
    if (o.format == "json") {
        auto out = open_out(dir / "scores.json");
        io::write_scores_json(out, g, result, meta);
    } else {
        auto out = open_out(dir / "scores.csv");
        io::write_scores_csv(out, g, result, meta);
    }
    auto trace_out = open_out(dir / "trace.csv");
    io::write_trace_csv(trace_out, result.trace, meta);

    std::cout << "iterations=" << result.iterations << " converged="
              << (result.converged ? "true" : "false")
              << " score_sum=" << format_double(neumaier_sum(result.scores)) << "\n";
    return result.converged ? 0 : kExitNotConverged;
}

int cmd_core(const Options& o) {
    Graph g = load_graph(o);
    RankParams params = make_params(o, g, o.lambda);
    RankResult result = solve(g, params, effective_threads(o.threads));
    CoreStats stats = core_stats(g, result);
    InfluenceProfile profile = influenced_ratios(g, result);

    fs::path dir = ensure_out_dir(o);
    io::Meta meta = base_meta(o, "core");
    {
        auto out = open_out(dir / "core_summary.json");
        io::write_core_json(out, g, result, stats, meta);
    }
    {
        auto out = open_out(dir / "core_table.csv");
        io::write_core_csv(out, g, result, stats, meta);
    }
    {
        auto out = open_out(dir / "influenced_ratios.csv");
        io::write_comment_header(out, meta);
        out << "id,label,influenced_ratio\n";
        for (std::size_t i = 0; i < profile.nodes.size(); ++i)
            out << profile.nodes[i] << ',' << io::csv_escape(g.label(profile.nodes[i])) << ','
                << format_double(profile.ratios[i]) << "\n";
    }
    {
        auto out = open_out(dir / "tbb_vs_outdegree.csv");
        io::write_comment_header(out, meta);
        out << "rank,out_degree,tbb\n";
        auto pairs = tbb_vs_outdegree(g, result, 1, g.node_count());
        for (std::size_t i = 0; i < pairs.size(); ++i)
            out << (i + 1) << ',' << pairs[i].first << ',' << pairs[i].second << "\n";
    }
    if (!stats.core.empty()) {
        std::vector<double> tbb_values;
        std::vector<double> degree_values;
        for (NodeId v : stats.core) {
            tbb_values.push_back(stats.tbb[v]);
            degree_values.push_back(g.out_degree(v));
        }
        const std::size_t bins = 50;
        auto h1 = open_out(dir / "tbb_histogram.csv");
        io::write_histogram_csv(h1, loglog_histogram(tbb_values, bins), meta);
        auto h2 = open_out(dir / "out_degree_histogram.csv");
        io::write_histogram_csv(h2, loglog_histogram(degree_values, bins), meta);
    }

    std::cout << "core_size=" << stats.core_size()
              << " collective_influence=" << format_double(stats.collective_influence)
              << " avg_support=" << format_double(stats.avg_support) << "\n";
    return result.converged ? 0 : kExitNotConverged;
}

int cmd_compare(const Options& o) {
    Graph g = load_graph(o);
    make_params(o, g, 0.0).validate(g.node_count());
    std::vector<RankComparison> rows = compare_sweep(g, o.damping, o.lambdas, o.top_k, o.tol,
                                                     o.max_iters, effective_threads(o.threads));

    fs::path dir = ensure_out_dir(o);
    io::Meta meta = base_meta(o, "compare");
    {
        std::string ks;
        for (std::size_t k : rows.front().schedule) {
            if (!ks.empty()) ks += ' ';
            ks += std::to_string(k);
        }
        meta.emplace_back("schedule", ks);
    }
    {
        auto out = open_out(dir / "compare.csv");
        io::write_compare_csv(out, rows, meta);
    }
    if (o.format == "json") {
        auto out = open_out(dir / "compare.json");
        io::write_compare_json(out, rows, meta);
    }
    std::cout << "comparisons=" << rows.size() << "\n";
    return 0;
}

int cmd_sweep(const Options& o) {
    Graph g = load_graph(o);
    make_params(o, g, 0.0).validate(g.node_count());
    auto rows = core_size_sweep(g, o.damping, o.lambdas, o.tol, o.max_iters,
                                effective_threads(o.threads));

    fs::path dir = ensure_out_dir(o);
    io::Meta meta = base_meta(o, "sweep");
    auto out = open_out(dir / "core_size_sweep.csv");
    io::write_sweep_csv(out, rows, meta);
    std::cout << "rows=" << rows.size() << "\n";
    return 0;
}

int cmd_toplist(const Options& o) {
    Graph g = load_graph(o);
    RankParams params = make_params(o, g, o.lambda);
    RankResult result = solve(g, params, effective_threads(o.threads));

    std::size_t k = o.top_k.empty() ? std::min<std::size_t>(g.node_count(), 50) : o.top_k.front();

    io::Meta meta = base_meta(o, "toplist");
    meta.emplace_back("top_k", std::to_string(k));
    std::ostringstream table;
    io::write_toplist_csv(table, g, result, k, meta);
    std::cout << table.str();
    if (!o.out.empty()) {
        fs::path dir = ensure_out_dir(o);
        auto out = open_out(dir / "toplist.csv");
        out << table.str();
    }
    return result.converged ? 0 : kExitNotConverged;
}

int cmd_synth(const Options& o) {
    std::vector<synth::Edge> edges;
    if (o.generator == "erdos_renyi")
        edges = synth::erdos_renyi(o.nodes, o.param, o.seed);
    else if (o.generator == "preferential_attachment")
        edges = synth::preferential_attachment(o.nodes, static_cast<std::size_t>(o.param), o.seed);
    else
        throw std::invalid_argument("unknown generator: " + o.generator);

    Graph g = synth::to_graph(o.nodes, edges);
    fs::path path(o.out);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    auto out = open_out(path);
    out << "# generator=" << o.generator << " nodes=" << o.nodes
        << " param=" << format_double(o.param) << " seed=" << o.seed << "\n";
    std::ostringstream labels_sink;
    write_canonical(g, out, labels_sink);
    std::cout << "nodes=" << g.node_count() << " edges=" << g.edge_count() << "\n";
    return 0;
}

// Debugging aid: dense reference scores (slow, small graphs only).
int cmd_oracle_rank(const Options& o) {
    Graph g = load_graph(o);
    RankParams params = make_params(o, g, 0.0);
    oracle::DenseGraph dg = oracle::build_dense(g, o.damping, params.teleport);
    std::vector<double> pi = oracle::pagerank(dg, o.tol);
    std::cout << "id,label,score\n";
    for (NodeId v = 0; v < g.node_count(); ++v)
        std::cout << v << ',' << io::csv_escape(g.label(v)) << ',' << format_double(pi[v])
                  << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-analysis toolkit: PageRank and best-backlink (max) ranking"};
    app.require_subcommand(1);

    Options o;

    CLI::App* rank = app.add_subcommand("rank", "compute scores and a convergence trace");
    add_common(rank, o, false);

    CLI::App* core = app.add_subcommand("core", "best-backlink core and influence measures");
    add_common(core, o, false);

    CLI::App* compare = app.add_subcommand("compare", "top-k similarity against lambda=0");
    add_common(compare, o, true);
    compare->add_option("--top-k", o.top_k, "k schedule (default 5,10,...,1000 clipped to N)")
        ->envname("MAXRANK_TOP_K")
        ->delimiter(',');

    CLI::App* sweep = app.add_subcommand("sweep", "core size per lambda");
    add_common(sweep, o, true);

    CLI::App* toplist = app.add_subcommand("toplist", "top-k pages with their best backlinks");
    add_common(toplist, o, false);
    toplist->get_option("--out")->required(false);
    toplist->add_option("--top-k", o.top_k, "list length (default min(N, 50))")
        ->envname("MAXRANK_TOP_K")
        ->delimiter(',');

    CLI::App* synth_cmd = app.add_subcommand("synth", "write a deterministic synthetic graph");
    synth_cmd->add_option("--generator", o.generator, "erdos_renyi or preferential_attachment")
        ->envname("MAXRANK_GENERATOR")
        ->required();
    synth_cmd->add_option("--nodes", o.nodes, "node count")->envname("MAXRANK_NODES")->required();
    synth_cmd->add_option("--param", o.param, "edge probability (ER) or links per node (PA)")
        ->envname("MAXRANK_PARAM")
        ->required();
    synth_cmd->add_option("--seed", o.seed, "64-bit generator seed")->envname("MAXRANK_SEED");
    synth_cmd->add_option("--out", o.out, "output edge-list file")
        ->envname("MAXRANK_OUT")
        ->required();

    CLI::App* oracle_rank = app.add_subcommand("oracle-rank", "dense reference scores (debug)");
    add_common(oracle_rank, o, false);
    oracle_rank->get_option("--out")->required(false);
    oracle_rank->group("");  // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (rank->parsed()) return cmd_rank(o);
        if (core->parsed()) return cmd_core(o);
        if (compare->parsed()) return cmd_compare(o);
        if (sweep->parsed()) return cmd_sweep(o);
        if (toplist->parsed()) return cmd_toplist(o);
        if (synth_cmd->parsed()) return cmd_synth(o);
        if (oracle_rank->parsed()) return cmd_oracle_rank(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
