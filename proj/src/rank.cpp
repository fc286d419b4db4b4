#include "maxrank/rank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maxrank/util.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maxrank {

void RankParams::validate(std::size_t node_count) const {
    if (!(damping > 0.0) || !(damping < 1.0))
        throw std::invalid_argument("damping must lie in (0, 1)");
    if (!(lambda >= 0.0) || !(lambda <= 1.0))
        throw std::invalid_argument("lambda must lie in [0, 1]");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
    if (!teleport.empty()) {
        if (teleport.size() != node_count)
            throw std::invalid_argument("teleport vector length does not match node count");
        for (double p : teleport)
            if (!(p >= 0.0)) throw std::invalid_argument("teleport entries must be nonnegative");
        double sum = neumaier_sum(teleport);
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("teleport vector must sum to 1");
    }
}

namespace {

struct Workspace {
    std::vector<double> weight;        // R_prev(i) / n_i, 0 for dangling i
    std::vector<double> block_partial;
};

double teleport_at(const RankParams& p, std::size_t n, NodeId j) {
    return p.teleport.empty() ? 1.0 / static_cast<double>(n) : p.teleport[j];
}

// One power step into (r_next, bb_next). r_prev must be validated.
void step_into(const Graph& g, std::span<const double> r_prev, const RankParams& p, int threads,
               Workspace& ws, std::vector<double>& r_next, std::vector<NodeId>& bb_next) {
    const std::size_t n = g.node_count();
    const double c = p.damping;
    const double lam = p.lambda;

    // Dangling mass, ascending id order (fixed accumulation order keeps the
    // result independent of the thread count).
    double dangling_mass = 0.0;
    for (NodeId i : g.dangling()) dangling_mass += r_prev[i];
    const double dangling_share = dangling_mass / static_cast<double>(n);

    ws.weight.resize(n);
    r_next.resize(n);
    bb_next.resize(n);

#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
    {
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            std::uint32_t deg = g.out_degree(static_cast<NodeId>(i));
            ws.weight[i] = deg == 0 ? 0.0 : r_prev[i] / static_cast<double>(deg);
        }

#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(n); ++jj) {
            const NodeId j = static_cast<NodeId>(jj);
            double sum = 0.0;
            double best_score = -1.0;
            NodeId best = kNoNode;
            for (NodeId i : g.backlinks(j)) {  // ascending: ties resolve to the smallest id
                sum += ws.weight[i];
                if (r_prev[i] > best_score) {
                    best_score = r_prev[i];
                    best = i;
                }
            }
            double max_term = best == kNoNode ? 0.0 : ws.weight[best];
            r_next[j] = c * (lam * max_term + (1.0 - lam) * (sum + dangling_share)) +
                        (1.0 - c) * teleport_at(p, n, j);
            bb_next[j] = best;
        }
    }
}

// ||a - b||_1 over fixed-width blocks; partials are combined in block order.
double l1_diff(std::span<const double> a, std::span<const double> b, int threads,
               std::vector<double>& block_partial) {
    const std::size_t n = a.size();
    const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
    block_partial.assign(blocks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(blocks); ++bi) {
        std::size_t lo = static_cast<std::size_t>(bi) * kReductionBlock;
        std::size_t hi = std::min(lo + kReductionBlock, n);
        double s = 0.0;
        for (std::size_t k = lo; k < hi; ++k) s += std::abs(a[k] - b[k]);
        block_partial[bi] = s;
    }
    double total = 0.0;
    for (double s : block_partial) total += s;
    return total;
}

void check_scores_input(std::size_t n, std::span<const double> r) {
    if (r.size() != n) throw std::invalid_argument("score vector length does not match node count");
    for (double x : r)
        if (!(x >= 0.0)) throw std::invalid_argument("score vector entries must be nonnegative");
}

int clamp_threads(int threads) {
    return threads < 1 ? 1 : threads;
}

} // namespace

StepResult maxrank_iterate(const Graph& g, std::span<const double> r_prev,
                           const RankParams& params, int threads) {
    params.validate(g.node_count());
    check_scores_input(g.node_count(), r_prev);
    Workspace ws;
    StepResult out;
    step_into(g, r_prev, params, clamp_threads(threads), ws, out.scores, out.best_backlink);
    return out;
}

std::vector<NodeId> best_backlink_map(const Graph& g, std::span<const double> scores) {
    check_scores_input(g.node_count(), scores);
    std::vector<NodeId> bb(g.node_count(), kNoNode);
    for (NodeId j = 0; j < g.node_count(); ++j) {
        double best_score = -1.0;
        for (NodeId i : g.backlinks(j)) {
            if (scores[i] > best_score) {
                best_score = scores[i];
                bb[j] = i;
            }
        }
    }
    return bb;
}

RankResult solve(const Graph& g, const RankParams& params, std::span<const double> r0,
                 int threads) {
    const std::size_t n = g.node_count();
    params.validate(n);
    check_scores_input(n, r0);
    threads = clamp_threads(threads);

    RankResult res;
    res.params = params;
    res.scores.assign(r0.begin(), r0.end());

    Workspace ws;
    std::vector<double> next(n);
    std::vector<NodeId> assignment;
    std::vector<NodeId> prev_assignment;

    for (std::size_t t = 1; t <= params.max_iters; ++t) {
        step_into(g, res.scores, params, threads, ws, next, assignment);
        double delta = l1_diff(next, res.scores, threads, ws.block_partial);
        res.trace.deltas.push_back(delta);
        res.trace.assignment_repeated.push_back(t >= 2 && assignment == prev_assignment);
        res.scores.swap(next);
        prev_assignment.swap(assignment);
        res.iterations = t;
        if (delta <= params.tol) {
            res.converged = true;
            break;
        }
    }

    res.best_backlink = best_backlink_map(g, res.scores);
    return res;
}

RankResult solve(const Graph& g, const RankParams& params, int threads) {
    const std::size_t n = g.node_count();
    params.validate(n);
    if (!params.teleport.empty()) return solve(g, params, params.teleport, threads);
    std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
    return solve(g, params, uniform, threads);
}

RankResult pagerank(const Graph& g, double damping, std::vector<double> teleport, double tol,
                    std::size_t max_iters, int threads) {
    RankParams p;
    p.damping = damping;
    p.lambda = 0.0;
    p.teleport = std::move(teleport);
    p.tol = tol;
    p.max_iters = max_iters;
    return solve(g, p, threads);
}

} // namespace maxrank
