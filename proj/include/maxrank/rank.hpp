#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxrank/graph.hpp"

namespace maxrank {

// Solver parameters. An empty teleport vector means uniform 1/N.
struct RankParams {
    double damping = 0.85;          // c in (0,1)
    double lambda = 0.0;            // best-backlink mixing weight in [0,1]
    std::vector<double> teleport;   // length N, nonnegative, sums to 1
    double tol = 1e-10;             // 1-norm stopping threshold
    std::size_t max_iters = 1000;

    // Throws std::invalid_argument on any violated bound. The teleport sum
    // is checked with compensated summation against a 1e-12 tolerance.
    void validate(std::size_t node_count) const;
};

// Per-iteration successive 1-norm errors, plus whether the best-backlink
// assignment used by each iteration matched the previous one (the premise
// of the fixed-assignment contraction bound).
struct ConvergenceTrace {
    std::vector<double> deltas;
    std::vector<bool> assignment_repeated;  // [t] = assignment at iteration t+1 equals iteration t
};

struct RankResult {
    std::vector<double> scores;       // R, length N
    std::vector<NodeId> best_backlink;  // kNoNode where B(j) is empty; from the final vector
    std::size_t iterations = 0;
    ConvergenceTrace trace;
    bool converged = false;
    RankParams params;                // effective parameters (teleport left empty if uniform)
};

struct StepResult {
    std::vector<double> scores;
    std::vector<NodeId> best_backlink;  // argmax over B(j) of the input vector
};

// One update of
//   R'(j) = c * [ lambda * R(i*)/n_{i*}
//               + (1-lambda) * ( sum_{i in B(j)} R(i)/n_i + D/N ) ]
//         + (1-c) * v(j)
// with i* = argmax_{i in B(j)} R(i) (ties to the smallest id) and dangling
// mass D = sum over dangling i of R(i). Dangling pseudo-links feed only the
// random-backlink term; they never compete in the argmax. Per-node sums run
// in ascending source order and D is accumulated in ascending id order, so
// results are bit-identical for any thread count.
StepResult maxrank_iterate(const Graph& g, std::span<const double> r_prev,
                           const RankParams& params, int threads = 1);

// Power iteration from r0 (default: the teleportation vector) until the
// successive 1-norm change falls to params.tol or max_iters is reached.
// best_backlink is recomputed from the converged vector. Hitting the
// iteration cap clears `converged` but is not an error.
RankResult solve(const Graph& g, const RankParams& params, int threads = 1);
RankResult solve(const Graph& g, const RankParams& params, std::span<const double> r0,
                 int threads = 1);

// lambda = 0 special case; scores sum to 1 within 10*tol.
RankResult pagerank(const Graph& g, double damping = 0.85, std::vector<double> teleport = {},
                    double tol = 1e-10, std::size_t max_iters = 1000, int threads = 1);

// argmax_{i in B(j)} scores(i) per node, ties to the smallest id; kNoNode
// where B(j) is empty.
std::vector<NodeId> best_backlink_map(const Graph& g, std::span<const double> scores);

} // namespace maxrank
