#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maxrank/graph.hpp"

namespace maxrank::synth {

struct Edge {
    NodeId src;
    NodeId dst;
};

// Directed G(n, p): every ordered pair (i, j), i != j, is an edge with
// probability p. Deterministic per seed across platforms (the generator
// draws raw mt19937_64 words, not std::distributions).
std::vector<Edge> erdos_renyi(std::size_t n, double p, std::uint64_t seed);

// Directed scale-free growth: m seed nodes, then each new node picks m
// distinct existing nodes with probability proportional to in-degree + 1.
// Most links point new -> old; a fixed 20% are reversed so the graph has
// cycles like a real link graph instead of being a DAG. In-degrees are
// heavy-tailed and nodes whose links all reversed come out dangling.
std::vector<Edge> preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed);

// Materializes all n nodes (isolated ones included) with ids as labels.
Graph to_graph(std::size_t n, std::span<const Edge> edges);

// `src dst` lines, one edge per line.
std::string to_edge_list_text(std::span<const Edge> edges);

} // namespace maxrank::synth
