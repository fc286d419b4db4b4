#include "maxrank/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <zlib.h>

#include <json.hpp>

#include "maxrank/util.hpp"

namespace maxrank::io {

using nlohmann::json;

namespace {

std::vector<NodeId> descending_score_order(std::span<const double> scores) {
    std::vector<NodeId> order(scores.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    return order;
}

json meta_to_json(const Meta& meta) {
    json obj = json::object();
    for (const auto& [k, v] : meta) obj[k] = v;
    return obj;
}

json params_to_json(const RankParams& p) {
    return json{{"damping", p.damping},
                {"lambda", p.lambda},
                {"tol", p.tol},
                {"max_iters", p.max_iters},
                {"teleport", p.teleport.empty() ? "uniform" : "custom"}};
}

} // namespace

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_comment_header(std::ostream& os, const Meta& meta) {
    for (const auto& [k, v] : meta) os << "# " << k << '=' << v << "\n";
}

void write_scores_csv(std::ostream& os, const Graph& g, const RankResult& r, const Meta& meta) {
    write_comment_header(os, meta);
    os << "id,label,score,best_backlink_id\n";
    for (NodeId v : descending_score_order(r.scores)) {
        os << v << ',' << csv_escape(g.label(v)) << ',' << format_double(r.scores[v]) << ',';
        if (r.best_backlink[v] != kNoNode) os << r.best_backlink[v];
        os << "\n";
    }
}

void write_scores_json(std::ostream& os, const Graph& g, const RankResult& r, const Meta& meta) {
    json doc;
    doc["config"] = meta_to_json(meta);
    doc["params"] = params_to_json(r.params);
    doc["iterations"] = r.iterations;
    doc["converged"] = r.converged;
    doc["trace"] = r.trace.deltas;
    json rows = json::array();
    for (NodeId v : descending_score_order(r.scores)) {
        json row{{"id", v}, {"label", g.label(v)}, {"score", r.scores[v]}};
        if (r.best_backlink[v] != kNoNode)
            row["best_backlink_id"] = r.best_backlink[v];
        else
            row["best_backlink_id"] = nullptr;
        rows.push_back(std::move(row));
    }
    doc["scores"] = std::move(rows);
    os << doc.dump(2) << "\n";
}

void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace, const Meta& meta) {
    write_comment_header(os, meta);
    os << "iter,delta,assignment_repeated\n";
    for (std::size_t t = 0; t < trace.deltas.size(); ++t)
        os << (t + 1) << ',' << format_double(trace.deltas[t]) << ','
           << (trace.assignment_repeated[t] ? 1 : 0) << "\n";
}

void write_core_csv(std::ostream& os, const Graph& g, const RankResult& r, const CoreStats& stats,
                    const Meta& meta) {
    write_comment_header(os, meta);
    os << "id,label,tbb,out_degree,tbb_ratio,score\n";
    std::vector<NodeId> order = stats.core;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (stats.tbb[a] != stats.tbb[b]) return stats.tbb[a] > stats.tbb[b];
        return a < b;
    });
    for (NodeId v : order)
        os << v << ',' << csv_escape(g.label(v)) << ',' << stats.tbb[v] << ','
           << g.out_degree(v) << ',' << format_double(stats.tbb_ratio[v]) << ','
           << format_double(r.scores[v]) << "\n";
}

void write_core_json(std::ostream& os, const Graph& g, const RankResult& r,
                     const CoreStats& stats, const Meta& meta) {
    json doc;
    doc["config"] = meta_to_json(meta);
    doc["params"] = params_to_json(r.params);
    doc["node_count"] = g.node_count();
    doc["core_size"] = stats.core_size();
    doc["supported_count"] = stats.supported_count;
    doc["collective_influence"] = stats.collective_influence;
    doc["avg_support"] = stats.avg_support;
    os << doc.dump(2) << "\n";
}

void write_sweep_csv(std::ostream& os, std::span<const std::pair<double, std::size_t>> rows,
                     const Meta& meta) {
    write_comment_header(os, meta);
    os << "lambda,core_size\n";
    for (const auto& [lam, size] : rows) os << format_double(lam) << ',' << size << "\n";
}

void write_compare_csv(std::ostream& os, std::span<const RankComparison> rows, const Meta& meta) {
    write_comment_header(os, meta);
    os << "lambda,k,c_k,tau_k\n";
    for (const RankComparison& cmp : rows) {
        std::string lam = cmp.candidate_name;
        if (lam.rfind("lambda=", 0) == 0) lam = lam.substr(7);
        for (std::size_t i = 0; i < cmp.schedule.size(); ++i)
            os << lam << ',' << cmp.schedule[i] << ',' << format_double(cmp.c_k[i]) << ','
               << format_double(cmp.tau_k[i]) << "\n";
    }
}

void write_compare_json(std::ostream& os, std::span<const RankComparison> rows, const Meta& meta) {
    json doc;
    doc["config"] = meta_to_json(meta);
    json arr = json::array();
    for (const RankComparison& cmp : rows)
        arr.push_back(json{{"reference", cmp.reference_name},
                           {"candidate", cmp.candidate_name},
                           {"k", cmp.schedule},
                           {"c_k", cmp.c_k},
                           {"tau_k", cmp.tau_k}});
    doc["comparisons"] = std::move(arr);
    os << doc.dump(2) << "\n";
}

void write_toplist_csv(std::ostream& os, const Graph& g, const RankResult& r, std::size_t k,
                       const Meta& meta) {
    if (k < 1 || k > g.node_count()) throw std::out_of_range("k out of range");
    write_comment_header(os, meta);
    os << "rank,page,score,best_backlink\n";
    std::vector<NodeId> order = descending_score_order(r.scores);
    for (std::size_t pos = 0; pos < k; ++pos) {
        NodeId v = order[pos];
        NodeId bb = r.best_backlink[v];
        os << (pos + 1) << ',' << csv_escape(g.label(v)) << ',' << format_double(r.scores[v])
           << ',' << (bb != kNoNode ? csv_escape(g.label(bb)) : std::string()) << "\n";
    }
}

void write_histogram_csv(std::ostream& os, std::span<const HistogramBin> bins, const Meta& meta) {
    write_comment_header(os, meta);
    os << "bin_center,count\n";
    for (const HistogramBin& b : bins) os << format_double(b.center) << ',' << b.count << "\n";
}

std::vector<double> load_teleport_csv(std::istream& in, std::size_t node_count) {
    std::vector<double> v(node_count, 0.0);
    std::vector<bool> seen(node_count, false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line == "id,probability") continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError(lineno, "teleport file: expected id,probability");
        std::size_t id = 0;
        double prob = 0.0;
        try {
            id = std::stoul(line.substr(0, comma));
            prob = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw ParseError(lineno, "teleport file: malformed row");
        }
        if (id >= node_count) throw ParseError(lineno, "teleport file: id out of range");
        if (seen[id]) throw ParseError(lineno, "teleport file: duplicate id");
        if (!(prob >= 0.0)) throw ParseError(lineno, "teleport file: negative probability");
        seen[id] = true;
        v[id] = prob;
    }
    double sum = neumaier_sum(v);
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("teleport probabilities must sum to 1 (got " +
                                    format_double(sum) + ")");
    for (double& x : v) x /= sum;
    return v;
}

namespace {

std::string inflate_gzip(const std::string& bytes) {
    z_stream zs{};
    if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK)
        throw std::runtime_error("zlib: inflateInit2 failed");
    std::string out;
    out.resize(std::max<std::size_t>(bytes.size() * 4, 4096));
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
    zs.avail_in = static_cast<uInt>(bytes.size());
    std::size_t written = 0;
    int rc = Z_OK;
    do {
        if (written == out.size()) out.resize(out.size() * 2);
        zs.next_out = reinterpret_cast<Bytef*>(out.data() + written);
        zs.avail_out = static_cast<uInt>(out.size() - written);
        rc = inflate(&zs, Z_NO_FLUSH);
        written = out.size() - zs.avail_out;
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw std::runtime_error("zlib: corrupt gzip stream");
        }
    } while (rc != Z_STREAM_END);
    inflateEnd(&zs);
    out.resize(written);
    return out;
}

} // namespace

std::string read_text_auto(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    if (bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
        static_cast<unsigned char>(bytes[1]) == 0x8b)
        return inflate_gzip(bytes);
    return bytes;
}

} // namespace maxrank::io
