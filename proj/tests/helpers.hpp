#pragma once

#include <cmath>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "maxrank/graph.hpp"
#include "maxrank/rank.hpp"
#include "maxrank/synth.hpp"

namespace test_helpers {

inline maxrank::Graph two_cycle() {
    return maxrank::parse_edge_list(std::string_view("a b\nb a\n"));
}

// A -> B, A -> C, B -> C, C -> A  (ids 0, 1, 2)
inline maxrank::Graph triangle_fan() {
    return maxrank::parse_edge_list(std::string_view("A B\nA C\nB C\nC A\n"));
}

// hub -> l1..l4, leaves dangling (ids: hub 0, leaves 1..4)
inline maxrank::Graph star5() {
    return maxrank::parse_edge_list(std::string_view("h l1\nh l2\nh l3\nh l4\n"));
}

inline maxrank::Graph er_graph(std::size_t n, double p, std::uint64_t seed) {
    return maxrank::synth::to_graph(n, maxrank::synth::erdos_renyi(n, p, seed));
}

inline maxrank::Graph pa_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
    return maxrank::synth::to_graph(n, maxrank::synth::preferential_attachment(n, m, seed));
}

inline double l1_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

inline std::vector<double> uniform_vector(std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

inline std::vector<double> random_scores(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return v;
}

} // namespace test_helpers
