// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one pass/fail line per criterion. Exit code is the failure count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "maxrank/analysis.hpp"
#include "maxrank/compare.hpp"
#include "maxrank/graph.hpp"
#include "maxrank/io.hpp"
#include "maxrank/oracle.hpp"
#include "maxrank/rank.hpp"
#include "maxrank/synth.hpp"
#include "maxrank/util.hpp"

namespace fs = std::filesystem;
using namespace maxrank;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kTol = 1e-10;
constexpr double kDamping = 0.85;
constexpr std::size_t kMaxIters = 1000;
const std::vector<double> kLambdaGrid = {0.0, 0.1, 0.5, 0.9, 1.0};

struct TestGraph {
    std::string name;
    Graph g;
};

std::vector<TestGraph> build_suite() {
    struct ErSpec {
        std::size_t n;
        double p;
        std::uint64_t seed;
    };
    struct PaSpec {
        std::size_t n;
        std::size_t m;
        std::uint64_t seed;
    };
    const ErSpec er_specs[] = {
        {10, 0.05, 101},   {10, 0.15, 103},  {10, 0.3, 103},   {10, 0.6, 105},
        {50, 0.02, 101},   {50, 0.05, 102},  {50, 0.05, 103},  {50, 0.02, 103},
        {200, 0.005, 101}, {200, 0.01, 104}, {200, 0.01, 105}, {200, 0.02, 120},
    };
    const PaSpec pa_specs[] = {
        {10, 1, 201},  {10, 2, 202},  {10, 3, 202},  {50, 1, 201},  {50, 2, 201},
        {50, 3, 204},  {50, 5, 203},  {200, 1, 202}, {200, 2, 207}, {200, 3, 208},
        {200, 5, 202}, {200, 8, 204}, {200, 12, 207},
    };

    std::vector<TestGraph> suite;
    for (const auto& s : er_specs) {
        std::ostringstream name;
        name << "er_n" << s.n << "_p" << s.p << "_s" << s.seed;
        suite.push_back({name.str(), synth::to_graph(s.n, synth::erdos_renyi(s.n, s.p, s.seed))});
    }
    for (const auto& s : pa_specs) {
        std::ostringstream name;
        name << "pa_n" << s.n << "_m" << s.m << "_s" << s.seed;
        suite.push_back(
            {name.str(), synth::to_graph(s.n, synth::preferential_attachment(s.n, s.m, s.seed))});
    }
    return suite;
}

RankParams params_at(double lambda) {
    RankParams p;
    p.damping = kDamping;
    p.lambda = lambda;
    p.tol = kTol;
    p.max_iters = kMaxIters;
    return p;
}

double l1(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

std::vector<double> random_nonneg(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return v;
}

struct Outcome {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::string seconds_since(Clock::time_point start) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    std::ostringstream os;
    os << static_cast<double>(ms.count()) / 1000.0 << " s";
    return os.str();
}

// Solve cache: (graph index, lambda index) -> result from the default start.
struct Cells {
    std::vector<std::vector<RankResult>> from_v;      // [graph][lambda]
    std::vector<std::vector<RankResult>> from_onehot; // [graph][lambda]
};

Cells solve_all_cells(const std::vector<TestGraph>& suite) {
    Cells cells;
    cells.from_v.resize(suite.size());
    cells.from_onehot.resize(suite.size());
    for (std::size_t gi = 0; gi < suite.size(); ++gi) {
        const Graph& g = suite[gi].g;
        std::vector<double> one_hot(g.node_count(), 0.0);
        one_hot[0] = 1.0;
        for (double lam : kLambdaGrid) {
            cells.from_v[gi].push_back(solve(g, params_at(lam)));
            cells.from_onehot[gi].push_back(solve(g, params_at(lam), one_hot));
        }
    }
    return cells;
}

Outcome criterion_reduction(const std::vector<TestGraph>& suite, const Cells& cells) {
    auto start = Clock::now();
    double worst = 0.0;
    std::size_t with_dangling = 0;
    std::string worst_name;
    for (std::size_t gi = 0; gi < suite.size(); ++gi) {
        const Graph& g = suite[gi].g;
        if (!g.dangling().empty()) ++with_dangling;
        const RankResult& r = cells.from_v[gi][0];  // lambda = 0
        if (!r.converged)
            return {1, "reduction to PageRank", false, suite[gi].name + " did not converge"};
        std::vector<double> pi = oracle::pagerank(oracle::build_dense(g, kDamping), 1e-12);
        double d = l1(r.scores, pi);
        if (d > worst) {
            worst = d;
            worst_name = suite[gi].name;
        }
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    bool in_time = elapsed.count() < 10000;
    std::ostringstream detail;
    detail << "max L1 " << worst << " (" << worst_name << "); " << suite.size() << " graphs, "
           << with_dangling << " with dangling nodes; " << seconds_since(start);
    return {1, "reduction to PageRank (1e-8, dense oracle)", worst <= 1e-8 && in_time,
            detail.str()};
}

Outcome criterion_step_equivalence(const std::vector<TestGraph>& suite) {
    double worst = 0.0;
    for (std::size_t gi = 0; gi < suite.size(); ++gi) {
        const Graph& g = suite[gi].g;
        const std::size_t n = g.node_count();
        std::vector<std::vector<double>> starts;
        starts.push_back(std::vector<double>(n, 1.0 / static_cast<double>(n)));
        starts.push_back(random_nonneg(n, 7000 + gi));
        for (double lam : kLambdaGrid) {
            for (const auto& r0 : starts) {
                StepResult ours = maxrank_iterate(g, r0, params_at(lam));
                std::vector<double> ref = oracle::maxrank_step(g, r0, kDamping, lam);
                for (std::size_t j = 0; j < n; ++j)
                    worst = std::max(worst, std::abs(ours.scores[j] - ref[j]));
            }
        }
    }
    std::ostringstream detail;
    detail << "max per-entry diff " << worst;
    return {2, "step equivalence vs literal update (1e-12/entry)", worst <= 1e-12, detail.str()};
}

Outcome criterion_init_independence(const std::vector<TestGraph>& suite, const Cells& cells) {
    double worst = 0.0;
    std::string worst_cell;
    for (std::size_t gi = 0; gi < suite.size(); ++gi) {
        for (std::size_t li = 0; li < kLambdaGrid.size(); ++li) {
            const RankResult& a = cells.from_v[gi][li];
            const RankResult& b = cells.from_onehot[gi][li];
            if (!a.converged || !b.converged)
                return {3, "initialization independence", false,
                        suite[gi].name + " did not converge"};
            double d = l1(a.scores, b.scores);
            if (d > worst) {
                worst = d;
                worst_cell = suite[gi].name + " lambda=" + format_double(kLambdaGrid[li]);
            }
        }
    }
    std::ostringstream detail;
    detail << "max L1 between starts " << worst << " (" << worst_cell << "), bound "
           << 10 * kTol;
    return {3, "initialization independence (10*tol)", worst <= 10 * kTol, detail.str()};
}

Outcome criterion_fixed_assignment_contraction(const std::vector<TestGraph>& suite,
                                               const Cells& cells) {
    std::size_t checked = 0;
    for (std::size_t gi = 0; gi < suite.size(); ++gi) {
        for (std::size_t li = 0; li < kLambdaGrid.size(); ++li) {
            const ConvergenceTrace& trace = cells.from_v[gi][li].trace;
            for (std::size_t t = 1; t < trace.deltas.size(); ++t) {
                if (!trace.assignment_repeated[t]) continue;
                ++checked;
                if (trace.deltas[t] > kDamping * trace.deltas[t - 1] + 1e-12) {
                    std::ostringstream detail;
                    detail << suite[gi].name << " lambda=" << kLambdaGrid[li] << " iter "
                           << (t + 1) << ": delta " << trace.deltas[t] << " > c*"
                           << trace.deltas[t - 1];
                    return {4, "fixed-assignment contraction", false, detail.str()};
                }
            }
        }
    }
    std::ostringstream detail;
    detail << checked << " repeated-assignment steps all satisfy delta' <= c*delta + 1e-12";
    return {4, "fixed-assignment contraction (Theorem 1)", checked > 0, detail.str()};
}

Outcome criterion_score_bounds(const std::vector<TestGraph>& suite, const Cells& cells) {
    for (std::size_t gi = 0; gi < suite.size(); ++gi) {
        const Graph& g = suite[gi].g;
        const double floor = (1.0 - kDamping) / static_cast<double>(g.node_count());
        for (std::size_t li = 0; li < kLambdaGrid.size(); ++li) {
            for (const RankResult* r :
                 {&cells.from_v[gi][li], &cells.from_onehot[gi][li]}) {
                for (double s : r->scores) {
                    if (s < floor - 1e-12) {
                        return {5, "score bounds", false,
                                suite[gi].name + ": teleportation floor violated"};
                    }
                }
                double mass = neumaier_sum(r->scores);
                if (mass < (1.0 - kDamping) - 1e-9 || mass > 1.0 + 1e-9)
                    return {5, "score bounds", false,
                            suite[gi].name + ": mass " + format_double(mass) + " out of bounds"};
                if (kLambdaGrid[li] == 0.0 && std::abs(mass - 1.0) > 1e-8)
                    return {5, "score bounds", false,
                            suite[gi].name + ": lambda=0 mass " + format_double(mass)};
            }
        }
    }
    return {5, "score bounds (floor, mass window, lambda=0 mass 1)", true,
            "all cells within bounds"};
}

Outcome criterion_speedup(const Graph& big) {
    auto start = Clock::now();
    std::size_t iters[3];
    const double lams[3] = {0.0, 0.5, 0.9};
    for (int i = 0; i < 3; ++i) {
        RankResult r = solve(big, params_at(lams[i]), 2);
        if (!r.converged)
            return {6, "convergence speedup", false, "lambda=" + format_double(lams[i]) +
                                                         " did not converge"};
        iters[i] = r.iterations;
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    bool in_time = elapsed.count() < 30000;
    std::ostringstream detail;
    detail << "iterations " << iters[0] << " -> " << iters[1] << " -> " << iters[2] << "; "
           << seconds_since(start);
    bool monotone = iters[2] < iters[1] && iters[1] < iters[0];
    return {6, "convergence speedup across lambda 0 -> 0.5 -> 0.9", monotone && in_time,
            detail.str()};
}

Outcome criterion_similarity_trend(const Graph& big) {
    std::vector<double> lambdas = {0.1, 0.5, 0.9};
    auto rows = compare_sweep(big, kDamping, lambdas, {}, kTol, kMaxIters, 2);
    auto mean = [](const std::vector<double>& xs) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s / static_cast<double>(xs.size());
    };
    double mean_c[3], mean_tau[3];
    for (int i = 0; i < 3; ++i) {
        mean_c[i] = mean(rows[i].c_k);
        mean_tau[i] = mean(rows[i].tau_k);
    }
    bool c_monotone = mean_c[0] >= mean_c[1] && mean_c[1] >= mean_c[2];
    bool tau_monotone = mean_tau[0] >= mean_tau[1] && mean_tau[1] >= mean_tau[2];

    bool small_lambda_close = true;
    for (std::size_t i = 0; i < rows[0].schedule.size(); ++i)
        if (rows[0].schedule[i] <= 100 && rows[0].c_k[i] < 0.9) small_lambda_close = false;

    std::ostringstream detail;
    detail << "mean c_k " << mean_c[0] << "/" << mean_c[1] << "/" << mean_c[2] << ", mean tau_k "
           << mean_tau[0] << "/" << mean_tau[1] << "/" << mean_tau[2]
           << ", min c_k(0.1, k<=100) ok=" << (small_lambda_close ? "yes" : "no");
    return {7, "similarity trend vs lambda; c_k(0.1) >= 0.9 for k <= 100",
            c_monotone && tau_monotone && small_lambda_close, detail.str()};
}

Outcome criterion_paper_arithmetic() {
    double r1 = tbb_ratio(3850, 5097);
    double r2 = tbb_ratio(1448, 1448);
    std::ostringstream detail;
    detail << "tbb_ratio(3850,5097)=" << r1 << ", tbb_ratio(1448,1448)=" << r2;
    bool ok = std::abs(r1 - 0.755346) <= 1e-6 && r2 == 1.0;
    return {8, "tbb/out-degree arithmetic spot checks", ok, detail.str()};
}

Outcome criterion_metric_oracles(const std::vector<TestGraph>& suite, const Cells& cells) {
    for (std::size_t gi = 0; gi < suite.size(); ++gi) {
        const Graph& g = suite[gi].g;
        const RankResult& reference = cells.from_v[gi][0];
        for (std::size_t li = 0; li < kLambdaGrid.size(); ++li) {
            const RankResult& r = cells.from_v[gi][li];

            CoreStats ours = core_stats(g, r);
            CoreStats ref = oracle::core_stats(g, r);
            if (ours.core != ref.core || ours.tbb != ref.tbb ||
                ours.supported_count != ref.supported_count)
                return {9, "metric oracles", false, suite[gi].name + ": core/tbb mismatch"};
            for (std::size_t i = 0; i < ours.tbb_ratio.size(); ++i)
                if (std::abs(ours.tbb_ratio[i] - ref.tbb_ratio[i]) > 1e-12)
                    return {9, "metric oracles", false, suite[gi].name + ": tbb_ratio mismatch"};
            if (std::abs(ours.collective_influence - ref.collective_influence) > 1e-12 ||
                std::abs(ours.avg_support - ref.avg_support) > 1e-12)
                return {9, "metric oracles", false, suite[gi].name + ": scalar mismatch"};

            InfluenceProfile p_ours = influenced_ratios(g, r);
            InfluenceProfile p_ref = oracle::influenced_ratios(g, r);
            if (p_ours.nodes != p_ref.nodes)
                return {9, "metric oracles", false, suite[gi].name + ": profile nodes mismatch"};
            for (std::size_t i = 0; i < p_ours.ratios.size(); ++i)
                if (std::abs(p_ours.ratios[i] - p_ref.ratios[i]) > 1e-12)
                    return {9, "metric oracles", false,
                            suite[gi].name + ": influenced ratio mismatch"};

            for (std::size_t k : default_k_schedule(g.node_count())) {
                if (k < 2) continue;
                double c_prod = top_k_overlap(reference, r, k);
                double c_ref = oracle::top_k_overlap(reference.scores, r.scores, k);
                double t_prod = kendall_tau_topk(reference, r, k);
                double t_ref = oracle::kendall_tau_topk(reference.scores, r.scores, k);
                if (c_prod != c_ref || t_prod != t_ref)
                    return {9, "metric oracles", false,
                            suite[gi].name + ": c_k/tau_k mismatch at k=" + std::to_string(k)};
            }
        }
    }

    // tau against the O(k^2) enumerator on random score vectors
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 10 + static_cast<std::size_t>(rng() % 21);  // 10..30
        std::vector<double> a = random_nonneg(n, rng());
        std::vector<double> b = random_nonneg(n, rng());
        if (trial % 4 == 0)
            for (std::size_t i = 0; i + 1 < n; i += 2) b[i + 1] = b[i];
        std::size_t k = 2 + static_cast<std::size_t>(rng() % (n - 1));
        if (kendall_tau_topk(std::span<const double>(a), std::span<const double>(b), k) !=
            oracle::kendall_tau_topk(a, b, k))
            return {9, "metric oracles", false,
                    "tau enumerator mismatch on random pair " + std::to_string(trial)};
    }
    return {9, "metric oracles (exact counts, 1e-12 ratios, 100 tau pairs)", true,
            "all metrics match the exhaustive recomputation"};
}

Outcome criterion_structural_invariants(const std::vector<TestGraph>& suite, const Cells& cells) {
    for (std::size_t gi = 0; gi < suite.size(); ++gi) {
        const Graph& g = suite[gi].g;
        for (std::size_t li = 0; li < kLambdaGrid.size(); ++li) {
            CoreStats stats = core_stats(g, cells.from_v[gi][li]);
            std::size_t tbb_sum = 0;
            std::size_t with_backlinks = 0;
            for (NodeId v = 0; v < g.node_count(); ++v) {
                tbb_sum += stats.tbb[v];
                if (!g.backlinks(v).empty()) ++with_backlinks;
            }
            if (tbb_sum != with_backlinks)
                return {10, "structural invariants", false,
                        suite[gi].name + ": tbb total != supported nodes"};
            for (NodeId v : stats.core) {
                if (stats.tbb[v] > g.out_degree(v))
                    return {10, "structural invariants", false,
                            suite[gi].name + ": tbb exceeds out-degree"};
                if (g.out_degree(v) == 1 && stats.tbb_ratio[v] != 1.0)
                    return {10, "structural invariants", false,
                            suite[gi].name + ": out-degree-1 core node with ratio != 1"};
            }
        }
    }
    return {10, "structural invariants (tbb conservation and bounds)", true,
            "all graphs and lambdas"};
}

Outcome criterion_thread_determinism(const Graph& big) {
    fs::path dir = fs::temp_directory_path() / "maxrank_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::path input = dir / "pa10000.txt";
    {
        std::ofstream edges(input);
        std::ostringstream labels_sink;
        write_canonical(big, edges, labels_sink);
    }
    auto run = [&](const std::string& args) {
        std::string cmd = std::string("\"") + MAXRANK_CLI_PATH + "\" " + args +
                          " >/dev/null 2>" + (dir / "stderr.txt").string();
        int rc = std::system(cmd.c_str());
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    };
    fs::path out1 = dir / "t1";
    fs::path out8 = dir / "t8";
    int rc1 = run("rank --input " + input.string() + " --lambda 0.5 --tol 1e-10 --threads 1 --out " +
                  out1.string());
    int rc8 = run("rank --input " + input.string() + " --lambda 0.5 --tol 1e-10 --threads 8 --out " +
                  out8.string());
    if (rc1 != 0 || rc8 != 0)
        return {11, "thread-count determinism", false,
                "cli exit codes " + std::to_string(rc1) + "/" + std::to_string(rc8)};
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    std::string a = slurp(out1 / "scores.csv");
    std::string b = slurp(out8 / "scores.csv");
    bool same = !a.empty() && a == b &&
                slurp(out1 / "trace.csv") == slurp(out8 / "trace.csv");
    return {11, "thread-count determinism (--threads 1 vs 8, bit-identical)", same,
            same ? "score and trace files identical" : "files differ"};
}

} // namespace

int main() {
    std::vector<Outcome> outcomes;
    auto started = Clock::now();

    std::vector<TestGraph> suite = build_suite();
    Cells cells = solve_all_cells(suite);
    Graph big = synth::to_graph(10000, synth::preferential_attachment(10000, 3, 99));

    auto guard = [&outcomes](int id, const char* name, auto&& fn) {
        try {
            outcomes.push_back(fn());
        } catch (const std::exception& e) {
            outcomes.push_back({id, name, false, std::string("exception: ") + e.what()});
        }
    };

    guard(1, "reduction to PageRank", [&] { return criterion_reduction(suite, cells); });
    guard(2, "step equivalence", [&] { return criterion_step_equivalence(suite); });
    guard(3, "initialization independence", [&] { return criterion_init_independence(suite, cells); });
    guard(4, "fixed-assignment contraction", [&] { return criterion_fixed_assignment_contraction(suite, cells); });
    guard(5, "score bounds", [&] { return criterion_score_bounds(suite, cells); });
    guard(6, "convergence speedup", [&] { return criterion_speedup(big); });
    guard(7, "similarity trend", [&] { return criterion_similarity_trend(big); });
    guard(8, "paper arithmetic", [&] { return criterion_paper_arithmetic(); });
    guard(9, "metric oracles", [&] { return criterion_metric_oracles(suite, cells); });
    guard(10, "structural invariants", [&] { return criterion_structural_invariants(suite, cells); });
    guard(11, "thread determinism", [&] { return criterion_thread_determinism(big); });

    int failures = 0;
    for (const Outcome& o : outcomes) {
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << o.id << ": " << o.name
                  << " — " << o.detail << "\n";
    }
    std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
              << outcomes.size() - static_cast<std::size_t>(failures) << "/" << outcomes.size()
              << " criteria, " << seconds_since(started) << ")\n";
    return failures;
}
