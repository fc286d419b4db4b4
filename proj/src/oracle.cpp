#include "maxrank/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "maxrank/util.hpp"

namespace maxrank::oracle {

namespace {

void check_dense_bound(std::size_t n) {
    if (n > kDenseLimit) throw std::invalid_argument("graph exceeds the dense oracle bound");
}

std::vector<double> uniform_or(std::span<const double> teleport, std::size_t n) {
    if (teleport.empty()) return std::vector<double>(n, 1.0 / static_cast<double>(n));
    if (teleport.size() != n) throw std::invalid_argument("teleport vector length mismatch");
    return {teleport.begin(), teleport.end()};
}

void verify_row_stochastic(const std::vector<double>& m, std::size_t n, const char* name) {
    for (std::size_t i = 0; i < n; ++i) {
        double sum = neumaier_sum(std::span<const double>(m.data() + i * n, n));
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::logic_error(std::string(name) + " row is not stochastic");
    }
}

} // namespace

DenseGraph build_dense(const Graph& g, double damping, std::span<const double> teleport) {
    const std::size_t n = g.node_count();
    check_dense_bound(n);
    if (!(damping > 0.0) || !(damping < 1.0))
        throw std::invalid_argument("damping must lie in (0, 1)");
    std::vector<double> v = uniform_or(teleport, n);

    DenseGraph dg;
    dg.n = n;
    dg.link.assign(n * n, 0.0);
    for (NodeId j = 0; j < n; ++j)
        for (NodeId i : g.backlinks(j))
            dg.link[static_cast<std::size_t>(i) * n + j] =
                1.0 / static_cast<double>(g.out_degree(i));
    for (NodeId i : g.dangling())
        for (std::size_t j = 0; j < n; ++j)
            dg.link[static_cast<std::size_t>(i) * n + j] = 1.0 / static_cast<double>(n);

    dg.google.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dg.google[i * n + j] = damping * dg.link[i * n + j] + (1.0 - damping) * v[j];

    verify_row_stochastic(dg.link, n, "S");
    verify_row_stochastic(dg.google, n, "G");
    return dg;
}

std::vector<double> pagerank(const DenseGraph& dg, double tol, std::size_t max_iters) {
    const std::size_t n = dg.n;
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    std::vector<double> pi(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    for (std::size_t t = 0; t < max_iters; ++t) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += dg.g(i, j) * pi[i];
            next[j] = s;
        }
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) delta += std::abs(next[j] - pi[j]);
        pi.swap(next);
        if (delta <= tol) break;
    }
    double sum = neumaier_sum(pi);
    for (double& x : pi) x /= sum;
    return pi;
}

std::vector<double> maxrank_step(const Graph& g, std::span<const double> r_prev, double damping,
                                 double lambda, std::span<const double> teleport) {
    const std::size_t n = g.node_count();
    check_dense_bound(n);
    if (r_prev.size() != n) throw std::invalid_argument("score vector length mismatch");
    std::vector<double> v = uniform_or(teleport, n);

    std::vector<double> out(n);
    for (NodeId j = 0; j < n; ++j) {
        NodeId best = kNoNode;
        double best_score = -1.0;
        double sum = 0.0;
        for (NodeId i : g.backlinks(j)) {
            sum += (1.0 / static_cast<double>(g.out_degree(i))) * r_prev[i];
            if (r_prev[i] > best_score) {
                best_score = r_prev[i];
                best = i;
            }
        }
        // Dangling pseudo-links carry probability 1/N into the random-
        // backlink term only; they never enter the argmax.
        for (NodeId d : g.dangling()) sum += (1.0 / static_cast<double>(n)) * r_prev[d];
        double max_term =
            best == kNoNode ? 0.0
                            : (1.0 / static_cast<double>(g.out_degree(best))) * r_prev[best];
        out[j] = damping * (lambda * max_term + (1.0 - lambda) * sum) +
                 (1.0 - damping) * v[j];
    }
    return out;
}

CoreStats core_stats(const Graph& g, const RankResult& result) {
    const std::size_t n = g.node_count();
    check_dense_bound(n);

    std::vector<NodeId> assignment(n, kNoNode);
    for (NodeId j = 0; j < n; ++j) {
        double best_score = -1.0;
        for (NodeId i : g.backlinks(j)) {
            if (result.scores[i] > best_score) {
                best_score = result.scores[i];
                assignment[j] = i;
            }
        }
    }

    CoreStats stats;
    stats.tbb.assign(n, 0);
    stats.tbb_ratio.assign(n, 0.0);
    for (NodeId j = 0; j < n; ++j) {
        if (assignment[j] == kNoNode) continue;
        ++stats.tbb[assignment[j]];
        ++stats.supported_count;
    }
    for (NodeId i = 0; i < n; ++i) {
        if (stats.tbb[i] == 0) continue;
        stats.core.push_back(i);
        stats.tbb_ratio[i] =
            static_cast<double>(stats.tbb[i]) / static_cast<double>(g.out_degree(i));
    }
    double total = 0.0;
    for (double s : result.scores) total += s;
    double core_mass = 0.0;
    for (NodeId i : stats.core) core_mass += result.scores[i];
    stats.collective_influence = total > 0.0 ? core_mass / total : 0.0;
    stats.avg_support = stats.core.empty()
                            ? 0.0
                            : static_cast<double>(stats.supported_count) /
                                  static_cast<double>(stats.core.size());
    return stats;
}

InfluenceProfile influenced_ratios(const Graph& g, const RankResult& result,
                                   bool lambda_weighted) {
    const std::size_t n = g.node_count();
    check_dense_bound(n);

    InfluenceProfile profile;
    for (NodeId j = 0; j < n; ++j) {
        double best_score = -1.0;
        NodeId best = kNoNode;
        for (NodeId i : g.backlinks(j)) {
            if (result.scores[i] > best_score) {
                best_score = result.scores[i];
                best = i;
            }
        }
        if (best == kNoNode) continue;
        double contribution = result.scores[best] / static_cast<double>(g.out_degree(best));
        if (lambda_weighted) contribution *= result.params.damping * result.params.lambda;
        profile.nodes.push_back(j);
        profile.ratios.push_back(result.scores[j] > 0.0 ? contribution / result.scores[j] : 0.0);
    }
    return profile;
}

namespace {

// Full sort by (score desc, id asc), truncated to k.
std::vector<NodeId> top_k_by_sort(std::span<const double> scores, std::size_t k) {
    if (k < 1 || k > scores.size()) throw std::out_of_range("k out of range");
    std::vector<NodeId> order(scores.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    order.resize(k);
    return order;
}

} // namespace

double top_k_overlap(std::span<const double> reference, std::span<const double> candidate,
                     std::size_t k) {
    std::vector<NodeId> ref = top_k_by_sort(reference, k);
    std::vector<NodeId> cand = top_k_by_sort(candidate, k);
    std::size_t common = 0;
    for (NodeId a : ref)
        for (NodeId b : cand)
            if (a == b) ++common;
    return static_cast<double>(common) / static_cast<double>(k);
}

double kendall_tau_topk(std::span<const double> reference, std::span<const double> candidate,
                        std::size_t k) {
    if (k < 2 || k > reference.size()) throw std::out_of_range("k out of range");
    std::vector<NodeId> top = top_k_by_sort(reference, k);

    // Pair weights: 1 for candidate agreement with the reference order (or a
    // tie in both rankings), 0.5 for a candidate tie the reference orders
    // strictly, 0 for disagreement.
    std::size_t concordant = 0;
    std::size_t tied = 0;
    std::size_t tied_both = 0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            double sa = candidate[top[a]];
            double sb = candidate[top[b]];
            if (sa > sb) {
                ++concordant;
            } else if (sa == sb) {
                ++tied;
                if (reference[top[a]] == reference[top[b]]) ++tied_both;
            }
        }
    }
    const std::size_t pairs = k * (k - 1) / 2;
    return (static_cast<double>(concordant) + 0.5 * static_cast<double>(tied - tied_both) +
            static_cast<double>(tied_both)) /
           static_cast<double>(pairs);
}

} // namespace maxrank::oracle
