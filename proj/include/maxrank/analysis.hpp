#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "maxrank/graph.hpp"
#include "maxrank/rank.hpp"

namespace maxrank {

// The best-backlink core and its influence measures, all derived from the
// converged assignment.
struct CoreStats {
    std::vector<NodeId> core;         // nodes that are best backlink for >= 1 node, ascending
    std::vector<std::uint32_t> tbb;   // length N; times of being the best backlink
    std::vector<double> tbb_ratio;    // length N; tbb / out_degree, 0 outside the core
    double collective_influence = 0;  // core score mass / total score mass
    double avg_support = 0;           // supported nodes per core member
    std::size_t supported_count = 0;  // |{j : B(j) nonempty}|

    std::size_t core_size() const { return core.size(); }
};

// Share of each node's converged score attributed to its best backlink.
// Nodes with no backlinks are omitted.
struct InfluenceProfile {
    std::vector<NodeId> nodes;   // ascending
    std::vector<double> ratios;  // parallel to nodes
};

struct HistogramBin {
    double center = 0;  // geometric bin center
    std::size_t count = 0;
};

double tbb_ratio(std::uint32_t tbb, std::uint32_t out_degree);

CoreStats core_stats(const Graph& g, const RankResult& result);

// One solve per lambda; reports (lambda, core size).
std::vector<std::pair<double, std::size_t>> core_size_sweep(const Graph& g, double damping,
                                                            std::span<const double> lambdas,
                                                            double tol, std::size_t max_iters,
                                                            int threads = 1);

// lambda_weighted (default) measures c*lambda*R(i*)/n_{i*} / R(j), the share
// the update rule actually attributes to the best backlink; the unweighted
// variant reports the raw P(i*,j)*R(i*) / R(j) contribution instead.
InfluenceProfile influenced_ratios(const Graph& g, const RankResult& result,
                                   bool lambda_weighted = true);

// (out_degree, tbb) pairs for the nodes ranked lo..hi (1-based positions in
// descending-score order); tbb is 0 for non-core nodes.
std::vector<std::pair<std::uint32_t, std::uint32_t>> tbb_vs_outdegree(
    const Graph& g, const RankResult& result, std::size_t lo, std::size_t hi);

// Base-10 log-spaced bins over [1, max(values)]; bin counts sum to the
// number of values. Throws on nonpositive values.
std::vector<HistogramBin> loglog_histogram(std::span<const double> values, std::size_t bins);

} // namespace maxrank
