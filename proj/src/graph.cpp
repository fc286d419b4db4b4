#include "maxrank/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>

namespace maxrank {

Graph Graph::from_edges(std::size_t node_count, std::vector<std::pair<NodeId, NodeId>> edges,
                        std::vector<std::string> labels, const IngestOptions& options) {
    if (node_count == 0) throw std::invalid_argument("graph has no nodes");
    if (!labels.empty() && labels.size() != node_count)
        throw std::invalid_argument("label table size does not match node count");

    for (const auto& [src, dst] : edges) {
        if (src >= node_count || dst >= node_count)
            throw std::invalid_argument("edge endpoint out of range");
    }

    if (options.drop_self_loops) {
        std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
    }

    // Collapse duplicates: adjacency is 0/1.
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.out_degree_.assign(node_count, 0);
    for (const auto& [src, dst] : edges) ++g.out_degree_[src];

    // In-adjacency CSR, sources ascending per destination.
    std::sort(edges.begin(), edges.end(),
              [](const auto& a, const auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
    g.in_offsets_.assign(node_count + 1, 0);
    for (const auto& [src, dst] : edges) ++g.in_offsets_[dst + 1];
    for (std::size_t j = 0; j < node_count; ++j) g.in_offsets_[j + 1] += g.in_offsets_[j];
    g.in_sources_.reserve(edges.size());
    for (const auto& [src, dst] : edges) g.in_sources_.push_back(src);

    for (NodeId i = 0; i < node_count; ++i)
        if (g.out_degree_[i] == 0) g.dangling_.push_back(i);

    if (labels.empty()) {
        labels.reserve(node_count);
        for (std::size_t i = 0; i < node_count; ++i) labels.push_back(std::to_string(i));
    }
    g.labels_ = std::move(labels);
    return g;
}

std::span<const NodeId> Graph::backlinks(NodeId j) const {
    if (j >= node_count()) throw std::out_of_range("node id out of range");
    return {in_sources_.data() + in_offsets_[j], in_offsets_[j + 1] - in_offsets_[j]};
}

std::uint32_t Graph::out_degree(NodeId i) const {
    if (i >= node_count()) throw std::out_of_range("node id out of range");
    return out_degree_[i];
}

bool Graph::has_edge(NodeId i, NodeId j) const {
    auto b = backlinks(j);
    return std::binary_search(b.begin(), b.end(), i);
}

double Graph::transition_probability(NodeId i, NodeId j) const {
    if (i >= node_count()) throw std::out_of_range("node id out of range");
    if (is_dangling(i)) throw std::invalid_argument("transition probability undefined for a dangling source");
    if (!has_edge(i, j)) throw std::invalid_argument("no such edge");
    return 1.0 / static_cast<double>(out_degree_[i]);
}

const std::string& Graph::label(NodeId i) const {
    if (i >= node_count()) throw std::out_of_range("node id out of range");
    return labels_[i];
}

namespace {

bool is_sep(char c) {
    return c == ' ' || c == '\t';
}

// Splits a line into whitespace-separated tokens; rejects anything but
// exactly two.
bool split_two(std::string_view line, std::string_view& a, std::string_view& b) {
    std::string_view tok[2];
    int n = 0;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && is_sep(line[pos])) ++pos;
        if (pos == line.size()) break;
        std::size_t start = pos;
        while (pos < line.size() && !is_sep(line[pos])) ++pos;
        if (n == 2) return false;
        tok[n++] = line.substr(start, pos - start);
    }
    if (n != 2) return false;
    a = tok[0];
    b = tok[1];
    return true;
}

} // namespace

Graph parse_edge_list(std::istream& in, const IngestOptions& options) {
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> labels;
    std::vector<std::pair<NodeId, NodeId>> edges;

    auto intern = [&](std::string_view tok) -> NodeId {
        auto it = ids.find(std::string(tok));
        if (it != ids.end()) return it->second;
        NodeId id = static_cast<NodeId>(labels.size());
        labels.emplace_back(tok);
        ids.emplace(labels.back(), id);
        return id;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view view(line);
        std::size_t first = view.find_first_not_of(" \t");
        if (first == std::string_view::npos) continue;
        if (view[first] == '#') continue;

        std::string_view src, dst;
        if (!split_two(view, src, dst)) throw ParseError(lineno, "expected exactly two tokens");
        NodeId s = intern(src);
        NodeId d = intern(dst);
        edges.emplace_back(s, d);
    }
    if (labels.empty()) throw std::invalid_argument("empty graph: input contains no edges");
    const std::size_t node_count = labels.size();
    return Graph::from_edges(node_count, std::move(edges), std::move(labels), options);
}

Graph parse_edge_list(std::string_view text, const IngestOptions& options) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in, options);
}

void write_canonical(const Graph& g, std::ostream& edges_out, std::ostream& labels_out) {
    const std::size_t n = g.node_count();
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(g.edge_count());
    for (NodeId j = 0; j < n; ++j)
        for (NodeId i : g.backlinks(j)) edges.emplace_back(i, j);
    std::sort(edges.begin(), edges.end());

    edges_out << "# nodes=" << n << " edges=" << edges.size() << "\n";
    for (const auto& [src, dst] : edges) edges_out << src << ' ' << dst << "\n";

    for (NodeId i = 0; i < n; ++i) labels_out << i << '\t' << g.label(i) << "\n";
}

namespace {

std::size_t parse_count(std::string_view s) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("bad count in canonical header: " + std::string(s));
    return value;
}

} // namespace

Graph read_canonical(std::istream& edges_in, std::istream* labels_in) {
    std::string line;
    std::size_t lineno = 0;
    std::size_t n = 0;
    bool have_header = false;
    std::vector<std::pair<NodeId, NodeId>> edges;

    while (std::getline(edges_in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view view(line);
        std::size_t first = view.find_first_not_of(" \t");
        if (first == std::string_view::npos) continue;
        if (view[first] == '#') {
            if (!have_header) {
                std::size_t pos = view.find("nodes=");
                if (pos != std::string_view::npos) {
                    std::size_t end = view.find_first_of(" \t", pos);
                    n = parse_count(view.substr(pos + 6, end == std::string_view::npos
                                                              ? std::string_view::npos
                                                              : end - pos - 6));
                    have_header = true;
                }
            }
            continue;
        }
        std::string_view a, b;
        if (!split_two(view, a, b)) throw ParseError(lineno, "expected exactly two tokens");
        edges.emplace_back(static_cast<NodeId>(parse_count(a)), static_cast<NodeId>(parse_count(b)));
    }
    if (!have_header) throw std::invalid_argument("canonical edge list is missing its # nodes= header");

    std::vector<std::string> labels;
    if (labels_in) {
        labels.assign(n, {});
        std::vector<bool> seen(n, false);
        std::size_t lno = 0;
        while (std::getline(*labels_in, line)) {
            ++lno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            std::size_t tab = line.find('\t');
            if (tab == std::string::npos) throw ParseError(lno, "labels.tsv: expected id<TAB>label");
            std::size_t id = parse_count(std::string_view(line).substr(0, tab));
            if (id >= n) throw ParseError(lno, "labels.tsv: id out of range");
            labels[id] = line.substr(tab + 1);
            seen[id] = true;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!seen[i]) labels[i] = std::to_string(i);
    }

    // Canonical ingestion keeps self-loops out and duplicates collapsed the
    // same way the writer's source graph did.
    return Graph::from_edges(n, std::move(edges), std::move(labels));
}

} // namespace maxrank
