#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "maxrank/graph.hpp"
#include "maxrank/rank.hpp"

namespace maxrank {

// Top-k similarity of one candidate ranking against a reference, over a
// schedule of k values.
struct RankComparison {
    std::string reference_name;
    std::string candidate_name;
    std::vector<std::size_t> schedule;  // strictly increasing, each >= 2
    std::vector<double> c_k;            // top-k overlap fractions
    std::vector<double> tau_k;          // concordant-pair fractions
};

// Node ids ordered by descending score, ties by ascending id, truncated to k.
std::vector<NodeId> top_k_nodes(std::span<const double> scores, std::size_t k);

// |top_k(reference) ∩ top_k(candidate)| / k. Requires 1 <= k <= N.
double top_k_overlap(std::span<const double> reference, std::span<const double> candidate,
                     std::size_t k);
double top_k_overlap(const RankResult& reference, const RankResult& candidate, std::size_t k);

// Fraction of pairs from the REFERENCE's top-k that the candidate orders the
// same way; candidate score ties count 0.5. Requires 2 <= k <= N. The pair
// universe is asymmetric on purpose: it asks how consistently the candidate
// ranks the reference's top pages.
double kendall_tau_topk(std::span<const double> reference, std::span<const double> candidate,
                        std::size_t k);
double kendall_tau_topk(const RankResult& reference, const RankResult& candidate, std::size_t k);

// The default k schedule, clipped to N (entries above N are dropped; if none
// survive, {min(N, 2)} is used so 2-node graphs still report something).
std::vector<std::size_t> default_k_schedule(std::size_t node_count);

// Solves lambda = 0 as the reference, then one comparison per lambda.
// An empty schedule selects default_k_schedule(N).
std::vector<RankComparison> compare_sweep(const Graph& g, double damping,
                                          std::span<const double> lambdas,
                                          std::vector<std::size_t> schedule, double tol,
                                          std::size_t max_iters, int threads = 1);

} // namespace maxrank
