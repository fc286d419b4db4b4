#include "maxrank/compare.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "maxrank/util.hpp"

namespace maxrank {

namespace {

void check_k(std::size_t k, std::size_t n, std::size_t k_min) {
    if (k < k_min || k > n) throw std::out_of_range("k out of range");
}

// Prefix-count tree over compressed score ranks.
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
    void add(std::size_t i) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
    }
    std::size_t prefix(std::size_t i) const {  // count of entries with rank <= i
        std::size_t s = 0;
        for (++i; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

private:
    std::vector<std::size_t> tree_;
};

} // namespace

std::vector<NodeId> top_k_nodes(std::span<const double> scores, std::size_t k) {
    check_k(k, scores.size(), 1);
    std::vector<NodeId> order(scores.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](NodeId a, NodeId b) {
                          if (scores[a] != scores[b]) return scores[a] > scores[b];
                          return a < b;
                      });
    order.resize(k);
    return order;
}

double top_k_overlap(std::span<const double> reference, std::span<const double> candidate,
                     std::size_t k) {
    if (reference.size() != candidate.size())
        throw std::invalid_argument("rankings cover different node counts");
    std::vector<NodeId> ref = top_k_nodes(reference, k);
    std::vector<NodeId> cand = top_k_nodes(candidate, k);
    std::sort(ref.begin(), ref.end());
    std::sort(cand.begin(), cand.end());
    std::vector<NodeId> common;
    std::set_intersection(ref.begin(), ref.end(), cand.begin(), cand.end(),
                          std::back_inserter(common));
    return static_cast<double>(common.size()) / static_cast<double>(k);
}

double top_k_overlap(const RankResult& reference, const RankResult& candidate, std::size_t k) {
    return top_k_overlap(std::span<const double>(reference.scores),
                         std::span<const double>(candidate.scores), k);
}

double kendall_tau_topk(std::span<const double> reference, std::span<const double> candidate,
                        std::size_t k) {
    if (reference.size() != candidate.size())
        throw std::invalid_argument("rankings cover different node counts");
    check_k(k, reference.size(), 2);

    // Candidate scores of the reference's top-k, in reference order. A pair
    // (i < j) counts 1 when the candidate orders it like the reference
    // (s[i] > s[j], or tied in both rankings), 0.5 when the candidate ties a
    // pair the reference orders strictly, 0 otherwise.
    std::vector<NodeId> top = top_k_nodes(reference, k);
    std::vector<double> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = candidate[top[i]];

    std::vector<double> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    auto rank_of = [&](double x) {
        return static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
    };

    // Count discordant (earlier entry smaller) and candidate-tied pairs in
    // one O(k log k) sweep; concordant pairs are the remainder.
    Fenwick tree(sorted.size());
    std::size_t discordant = 0;
    std::size_t tied = 0;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t r = rank_of(s[i]);
        std::size_t le = tree.prefix(r);
        std::size_t lt = r > 0 ? tree.prefix(r - 1) : 0;
        discordant += lt;
        tied += le - lt;
        tree.add(r);
    }

    // Pairs tied in BOTH rankings agree outright. Reference ties sit in
    // consecutive runs of the top-k order, so count per run.
    std::size_t tied_both = 0;
    std::size_t run_start = 0;
    std::unordered_map<double, std::size_t> bucket;
    for (std::size_t i = 1; i <= k; ++i) {
        if (i < k && reference[top[i]] == reference[top[run_start]]) continue;
        if (i - run_start > 1) {
            bucket.clear();
            for (std::size_t a = run_start; a < i; ++a) ++bucket[s[a]];
            for (const auto& [value, count] : bucket) tied_both += count * (count - 1) / 2;
        }
        run_start = i;
    }

    const std::size_t pairs = k * (k - 1) / 2;
    const std::size_t concordant = pairs - discordant - tied;
    return (static_cast<double>(concordant) + 0.5 * static_cast<double>(tied - tied_both) +
            static_cast<double>(tied_both)) /
           static_cast<double>(pairs);
}

double kendall_tau_topk(const RankResult& reference, const RankResult& candidate, std::size_t k) {
    return kendall_tau_topk(std::span<const double>(reference.scores),
                            std::span<const double>(candidate.scores), k);
}

std::vector<std::size_t> default_k_schedule(std::size_t node_count) {
    static constexpr std::size_t kDefault[] = {5, 10, 30, 50, 80, 100, 300, 500, 800, 1000};
    std::vector<std::size_t> schedule;
    for (std::size_t k : kDefault)
        if (k <= node_count) schedule.push_back(k);
    if (schedule.empty()) schedule.push_back(std::min<std::size_t>(node_count, 2));
    return schedule;
}

std::vector<RankComparison> compare_sweep(const Graph& g, double damping,
                                          std::span<const double> lambdas,
                                          std::vector<std::size_t> schedule, double tol,
                                          std::size_t max_iters, int threads) {
    if (lambdas.empty()) throw std::invalid_argument("lambda list must be nonempty");
    if (schedule.empty()) schedule = default_k_schedule(g.node_count());
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        check_k(schedule[i], g.node_count(), 2);
        if (i > 0 && schedule[i] <= schedule[i - 1])
            throw std::invalid_argument("k schedule must be strictly increasing");
    }

    RankParams ref_params;
    ref_params.damping = damping;
    ref_params.lambda = 0.0;
    ref_params.tol = tol;
    ref_params.max_iters = max_iters;
    RankResult reference = solve(g, ref_params, threads);

    std::vector<RankComparison> out;
    out.reserve(lambdas.size());
    for (double lam : lambdas) {
        RankParams p = ref_params;
        p.lambda = lam;
        RankResult candidate = solve(g, p, threads);

        RankComparison cmp;
        cmp.reference_name = "lambda=0";
        cmp.candidate_name = "lambda=" + format_double(lam);
        cmp.schedule = schedule;
        for (std::size_t k : schedule) {
            cmp.c_k.push_back(top_k_overlap(reference, candidate, k));
            cmp.tau_k.push_back(kendall_tau_topk(reference, candidate, k));
        }
        out.push_back(std::move(cmp));
    }
    return out;
}

} // namespace maxrank
