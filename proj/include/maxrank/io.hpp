#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maxrank/analysis.hpp"
#include "maxrank/compare.hpp"
#include "maxrank/graph.hpp"
#include "maxrank/rank.hpp"

namespace maxrank::io {

// Effective run configuration embedded in every artifact (CSV comment lines
// or a JSON "config" object) so outputs are self-describing.
using Meta = std::vector<std::pair<std::string, std::string>>;

void write_comment_header(std::ostream& os, const Meta& meta);

// `id,label,score,best_backlink_id`, descending score (ties by ascending id).
void write_scores_csv(std::ostream& os, const Graph& g, const RankResult& r, const Meta& meta);
// Scores plus params echo, iteration count and the delta trace.
void write_scores_json(std::ostream& os, const Graph& g, const RankResult& r, const Meta& meta);
// `iter,delta,assignment_repeated`.
void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace, const Meta& meta);

// `id,label,tbb,out_degree,tbb_ratio,score` sorted by descending tbb.
void write_core_csv(std::ostream& os, const Graph& g, const RankResult& r, const CoreStats& stats,
                    const Meta& meta);
void write_core_json(std::ostream& os, const Graph& g, const RankResult& r,
                     const CoreStats& stats, const Meta& meta);

// `lambda,core_size`.
void write_sweep_csv(std::ostream& os, std::span<const std::pair<double, std::size_t>> rows,
                     const Meta& meta);

// `lambda,k,c_k,tau_k`.
void write_compare_csv(std::ostream& os, std::span<const RankComparison> rows, const Meta& meta);
void write_compare_json(std::ostream& os, std::span<const RankComparison> rows, const Meta& meta);

// `rank,page,score,best_backlink` for the top k nodes.
void write_toplist_csv(std::ostream& os, const Graph& g, const RankResult& r, std::size_t k,
                       const Meta& meta);

// `bin_center,count`.
void write_histogram_csv(std::ostream& os, std::span<const HistogramBin> bins, const Meta& meta);

// Teleportation CSV: `id,probability` rows, `#` comments and an optional
// header row allowed. Entries must be nonnegative, ids in range and unique;
// unlisted ids get 0. The sum must be within 1e-9 of 1; the vector is then
// normalized exactly so RankParams validation holds.
std::vector<double> load_teleport_csv(std::istream& in, std::size_t node_count);

// Whole-file read; transparently inflates gzip (sniffed by magic bytes).
std::string read_text_auto(const std::filesystem::path& path);

std::string csv_escape(const std::string& field);

} // namespace maxrank::io
