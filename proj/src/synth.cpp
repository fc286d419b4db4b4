#include "maxrank/synth.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace maxrank::synth {

namespace {

double canonical_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased-enough bounded draw via multiply-shift; avoids the
// implementation-defined std::uniform_int_distribution.
std::size_t bounded(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

} // namespace

std::vector<Edge> erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("node count must be positive");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("edge probability must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j) {
            if (i == j) continue;
            if (canonical_double(rng) < p) edges.push_back({i, j});
        }
    return edges;
}

std::vector<Edge> preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("attachment count must be positive");
    if (n <= m) throw std::invalid_argument("node count must exceed the attachment count");
    // Web-graph texture knobs: a slice of links points old -> new so the
    // graph is cyclic, and occasional runs of single-link "sequence" pages
    // (chronology chains, part 1 -> part 2 lists) close into rings. Each
    // sequence page also gets one preferential inbound link, the way index
    // pages link every item of a series.
    constexpr double back_edge_fraction = 0.2;
    constexpr double ring_start_probability = 0.01;
    constexpr std::size_t ring_min_length = 16;
    constexpr std::size_t ring_length_spread = 16;
    std::mt19937_64 rng(seed);

    // pool holds each node (in_degree + 1) times.
    std::vector<NodeId> pool;
    pool.reserve(2 * m * n);
    std::vector<std::uint32_t> in_degree(n, 0);
    for (NodeId i = 0; i < m; ++i) pool.push_back(i);

    auto push_in_link = [&](NodeId v) {
        pool.push_back(v);
        ++in_degree[v];
    };
    // strongest of several preferential draws, avoiding `avoid`
    auto draw_index_page = [&](NodeId avoid) {
        NodeId best = kNoNode;
        for (int c = 0; c < 8; ++c) {
            NodeId cand = pool[bounded(rng, pool.size())];
            if (cand == avoid) continue;
            if (best == kNoNode || in_degree[cand] > in_degree[best]) best = cand;
        }
        while (best == kNoNode) {
            NodeId cand = pool[bounded(rng, pool.size())];
            if (cand != avoid) best = cand;
        }
        return best;
    };

    std::vector<Edge> edges;
    edges.reserve(m * (n - m));
    std::unordered_set<NodeId> chosen;
    NodeId ring_start = kNoNode;
    std::size_t ring_remaining = 0;

    for (NodeId t = static_cast<NodeId>(m); t < n; ++t) {
        if (ring_start != kNoNode) {
            // sequence page: one link to its predecessor plus one inbound
            // link from an index-like page whose score dominates it
            edges.push_back({t, static_cast<NodeId>(t - 1)});
            push_in_link(static_cast<NodeId>(t - 1));
            NodeId hub = draw_index_page(static_cast<NodeId>(t - 1));
            edges.push_back({hub, t});
            push_in_link(t);
            pool.push_back(t);
            if (--ring_remaining == 0) {
                edges.push_back({ring_start, t});  // close the ring
                push_in_link(t);
                ring_start = kNoNode;
            }
            continue;
        }
        if (canonical_double(rng) < ring_start_probability &&
            t + ring_min_length + ring_length_spread + 1 < n) {
            // this node anchors a new ring; its only outgoing link is the
            // closing edge emitted when the ring completes
            ring_start = t;
            ring_remaining = ring_min_length + bounded(rng, ring_length_spread);
            pool.push_back(t);
            continue;
        }

        chosen.clear();
        while (chosen.size() < m) chosen.insert(pool[bounded(rng, pool.size())]);
        // Deterministic edge order: sort the chosen targets.
        std::vector<NodeId> targets(chosen.begin(), chosen.end());
        std::sort(targets.begin(), targets.end());
        for (NodeId u : targets) {
            if (canonical_double(rng) < back_edge_fraction) {
                edges.push_back({u, t});
                push_in_link(t);
            } else {
                edges.push_back({t, u});
                push_in_link(u);
            }
        }
        pool.push_back(t);
    }
    return edges;
}

Graph to_graph(std::size_t n, std::span<const Edge> edges) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(edges.size());
    for (const Edge& e : edges) pairs.emplace_back(e.src, e.dst);
    return Graph::from_edges(n, std::move(pairs));
}

std::string to_edge_list_text(std::span<const Edge> edges) {
    std::string out;
    for (const Edge& e : edges) {
        out += std::to_string(e.src);
        out += ' ';
        out += std::to_string(e.dst);
        out += '\n';
    }
    return out;
}

} // namespace maxrank::synth
