#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxrank/analysis.hpp"
#include "maxrank/compare.hpp"
#include "maxrank/graph.hpp"
#include "maxrank/rank.hpp"

// Slow, transparent reference implementations used by tests and acceptance.
// Everything here works from explicit dense structures and O(N^2) loops; the
// only thing shared with the production path is the tie-break and dangling
// conventions, which these references exist to verify, not to re-decide.
// Single-threaded by design.
namespace maxrank::oracle {

inline constexpr std::size_t kDenseLimit = 2000;

// Full N x N transition structure:
//   S = row-normalized adjacency, with dangling rows replaced by e^T / N
//   G = c * S + (1 - c) * e v^T
// Row-stochasticity of both is verified to 1e-12 at construction.
struct DenseGraph {
    std::size_t n = 0;
    std::vector<double> link;    // S, row-major
    std::vector<double> google;  // G, row-major

    double s(std::size_t i, std::size_t j) const { return link[i * n + j]; }
    double g(std::size_t i, std::size_t j) const { return google[i * n + j]; }
};

DenseGraph build_dense(const Graph& g, double damping, std::span<const double> teleport = {});

// Fixed-point iteration on pi = G^T pi; returns pi with sum 1.
std::vector<double> pagerank(const DenseGraph& dg, double tol, std::size_t max_iters = 200000);

// Literal per-definition evaluation of one score update, explicit loops and
// per-edge divisions (an independent rounding route from the production
// sweep).
std::vector<double> maxrank_step(const Graph& g, std::span<const double> r_prev, double damping,
                                 double lambda, std::span<const double> teleport = {});

// Exhaustive recomputations of the measurement suite, starting from the raw
// scores (the best-backlink assignment is re-derived, not reused).
CoreStats core_stats(const Graph& g, const RankResult& result);
InfluenceProfile influenced_ratios(const Graph& g, const RankResult& result,
                                   bool lambda_weighted = true);
double top_k_overlap(std::span<const double> reference, std::span<const double> candidate,
                     std::size_t k);
// O(k^2) pair enumeration.
double kendall_tau_topk(std::span<const double> reference, std::span<const double> candidate,
                        std::size_t k);

} // namespace maxrank::oracle
