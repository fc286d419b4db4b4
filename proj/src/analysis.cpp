#include "maxrank/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace maxrank {

double tbb_ratio(std::uint32_t tbb, std::uint32_t out_degree) {
    if (out_degree == 0) throw std::invalid_argument("tbb ratio undefined for out-degree 0");
    return static_cast<double>(tbb) / static_cast<double>(out_degree);
}

CoreStats core_stats(const Graph& g, const RankResult& result) {
    const std::size_t n = g.node_count();
    if (result.scores.size() != n || result.best_backlink.size() != n)
        throw std::invalid_argument("rank result does not match graph");

    CoreStats stats;
    stats.tbb.assign(n, 0);
    stats.tbb_ratio.assign(n, 0.0);

    for (NodeId j = 0; j < n; ++j) {
        NodeId i = result.best_backlink[j];
        if (i == kNoNode) continue;
        ++stats.tbb[i];
        ++stats.supported_count;
    }
    for (NodeId i = 0; i < n; ++i) {
        if (stats.tbb[i] == 0) continue;
        stats.core.push_back(i);
        stats.tbb_ratio[i] = tbb_ratio(stats.tbb[i], g.out_degree(i));
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

std::vector<std::pair<double, std::size_t>> core_size_sweep(const Graph& g, double damping,
                                                            std::span<const double> lambdas,
                                                            double tol, std::size_t max_iters,
                                                            int threads) {
    if (lambdas.empty()) throw std::invalid_argument("lambda list must be nonempty");
    std::vector<std::pair<double, std::size_t>> out;
    out.reserve(lambdas.size());
    for (double lam : lambdas) {
        RankParams p;
        p.damping = damping;
        p.lambda = lam;
        p.tol = tol;
        p.max_iters = max_iters;
        RankResult r = solve(g, p, threads);
        out.emplace_back(lam, core_stats(g, r).core_size());
    }
    return out;
}

InfluenceProfile influenced_ratios(const Graph& g, const RankResult& result,
                                   bool lambda_weighted) {
    const std::size_t n = g.node_count();
    if (result.scores.size() != n || result.best_backlink.size() != n)
        throw std::invalid_argument("rank result does not match graph");

    InfluenceProfile profile;
    const double c = result.params.damping;
    const double lam = result.params.lambda;
    for (NodeId j = 0; j < n; ++j) {
        NodeId i = result.best_backlink[j];
        if (i == kNoNode) continue;
        double contribution = result.scores[i] / static_cast<double>(g.out_degree(i));
        if (lambda_weighted) contribution *= c * lam;
        double score = result.scores[j];
        profile.nodes.push_back(j);
        profile.ratios.push_back(score > 0.0 ? contribution / score : 0.0);
    }
    return profile;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> tbb_vs_outdegree(const Graph& g,
                                                                      const RankResult& result,
                                                                      std::size_t lo,
                                                                      std::size_t hi) {
    const std::size_t n = g.node_count();
    if (lo < 1 || lo > hi || hi > n) throw std::out_of_range("rank range out of bounds");
    CoreStats stats = core_stats(g, result);

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (result.scores[a] != result.scores[b]) return result.scores[a] > result.scores[b];
        return a < b;
    });

    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(hi - lo + 1);
    for (std::size_t pos = lo - 1; pos < hi; ++pos) {
        NodeId v = order[pos];
        out.emplace_back(g.out_degree(v), stats.tbb[v]);
    }
    return out;
}

std::vector<HistogramBin> loglog_histogram(std::span<const double> values, std::size_t bins) {
    if (values.empty()) throw std::invalid_argument("histogram needs at least one value");
    if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
    double max_value = 0.0;
    for (double v : values) {
        if (!(v > 0.0)) throw std::invalid_argument("histogram values must be positive");
        max_value = std::max(max_value, v);
    }

    const double log_max = std::log10(std::max(max_value, 1.0));
    const double width = log_max > 0.0 ? log_max / static_cast<double>(bins) : 1.0;

    std::vector<HistogramBin> hist(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        double lo = width * static_cast<double>(b);
        double hi = width * static_cast<double>(b + 1);
        hist[b].center = std::pow(10.0, (lo + hi) / 2.0);
    }
    for (double v : values) {
        double pos = std::log10(v) / width;
        auto idx = static_cast<std::ptrdiff_t>(std::floor(pos));
        idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(bins) - 1);
        ++hist[static_cast<std::size_t>(idx)].count;
    }
    return hist;
}

} // namespace maxrank
