#pragma once

#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maxrank {

// Dense node index in [0, N). The id<->label mapping is a bijection held in
// a side table; all numeric kernels operate on ids only.
using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct IngestOptions {
    bool drop_self_loops = true;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Immutable sparse directed graph optimized for backlink sweeps.
//
// Adjacency is 0/1: duplicate edges are collapsed on ingestion. Only the
// in-adjacency is stored (offset array + source array, sources ascending per
// destination); forward structure is kept as out-degrees, which is all the
// score updates consume. Safe for concurrent reads once built.
class Graph {
public:
    // Builds from an explicit edge set over ids [0, node_count). Collapses
    // duplicates, drops self-loops per options, rejects out-of-range ids and
    // node_count == 0. When labels is empty, ids become their own labels.
    static Graph from_edges(std::size_t node_count,
                            std::vector<std::pair<NodeId, NodeId>> edges,
                            std::vector<std::string> labels = {},
                            const IngestOptions& options = {});

    std::size_t node_count() const { return out_degree_.size(); }
    std::size_t edge_count() const { return in_sources_.size(); }

    // B(j): distinct backlink sources of j, ascending. Throws on j >= N.
    std::span<const NodeId> backlinks(NodeId j) const;

    std::uint32_t out_degree(NodeId i) const;
    bool is_dangling(NodeId i) const { return out_degree(i) == 0; }

    // Nodes with no forward links, ascending.
    std::span<const NodeId> dangling() const { return dangling_; }

    // Random-surfer step probability 1/n_i for an existing edge (i, j).
    // Throws if i is dangling or the edge is absent; dangling mass is the
    // ranker's job, not an edge property.
    double transition_probability(NodeId i, NodeId j) const;

    bool has_edge(NodeId i, NodeId j) const;

    const std::string& label(NodeId i) const;
    const std::vector<std::string>& labels() const { return labels_; }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    Graph() = default;

    std::vector<std::size_t> in_offsets_;    // N + 1
    std::vector<NodeId> in_sources_;         // E, ascending within each node
    std::vector<std::uint32_t> out_degree_;  // N
    std::vector<NodeId> dangling_;           // ascending
    std::vector<std::string> labels_;        // N
};

// Reads `src dst` lines (tab or space separated). `#` lines are comments,
// blank lines are skipped. Labels are interned in first-appearance order;
// destination-only labels become dangling nodes. Throws ParseError with the
// offending line number on malformed lines, std::invalid_argument on an
// empty graph.
Graph parse_edge_list(std::istream& in, const IngestOptions& options = {});
Graph parse_edge_list(std::string_view text, const IngestOptions& options = {});

// Canonical form: edge lines `src dst` in integer ids sorted by (src, dst),
// preceded by a `# nodes=N edges=E` header; labels go to a sidecar TSV
// (`id<TAB>label`). read_canonical honors the header (so isolated nodes
// survive) and restores labels from the sidecar when given; the pair is an
// exact inverse of write_canonical.
void write_canonical(const Graph& g, std::ostream& edges_out, std::ostream& labels_out);
Graph read_canonical(std::istream& edges_in, std::istream* labels_in = nullptr);

} // namespace maxrank
