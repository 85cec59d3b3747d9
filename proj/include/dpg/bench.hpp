#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpg/dpg.hpp"
#include "dpg/exact.hpp"
#include "dpg/hardness.hpp"
#include "dpg/nn_descent.hpp"
#include "dpg/search.hpp"
#include "dpg/types.hpp"
#include "dpg/workload.hpp"

namespace dpg::bench {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Reference set plus held-out queries, as written by `gen`.
struct Workload {
  DenseDataset base;
  QuerySet queries;
};

/// Preset generation, query split and optional perturbation. Sub-seeds are
/// derive_seed(seed, 1) for the split and derive_seed(seed, 2) for the
/// perturbation.
Workload make_workload(const Preset& preset, std::uint64_t seed, std::size_t queries, double delta = 0.0);

/// One line of the search sweep CSV.
struct SweepRow {
  std::size_t pool = 0;
  std::size_t k = 0;
  double mean_recall = 0;
  double speedup = 0;
  double mean_distance_computations = 0;
  double pct_points_accessed = 0;
  double mean_hops = 0;
  double mean_seconds = 0;
};

struct QueryOutcome {
  double recall = 0;
  SearchStats stats;
};

/// Runs every query once at pool size L on the calling thread. Query i
/// draws its entry points from derive_seed(seed, i), so the entries of a
/// query do not depend on L.
std::vector<QueryOutcome> run_queries(const DenseDataset& base, const NeighborGraph& graph, const QuerySet& queries,
                                      const GroundTruth& gt, const SearchParams& params);

SweepRow summarize(std::span<const QueryOutcome> outcomes, std::size_t pool, std::size_t k, std::size_t n,
                   double baseline_seconds);

/// run_queries + summarize for each pool size.
std::vector<SweepRow> sweep_search(const DenseDataset& base, const NeighborGraph& graph, const QuerySet& queries,
                                   const GroundTruth& gt, std::span<const std::size_t> pools, std::size_t k,
                                   std::size_t entries, std::uint64_t seed);

/// Columns: L,k,mean_recall,speedup,mean_N,pct_points_accessed,mean_hops.
/// Preceded by one '#' line carrying `provenance`. 6 significant digits.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, const std::string& provenance);

enum class Algo { KGraph, DpgAngular, DpgCounting };
/// "kgraph", "dpg-angular" or "dpg-counting"; UsageError otherwise.
Algo parse_algo(const std::string& name);

struct BuildOptions {
  Algo algo = Algo::DpgCounting;
  /// For kgraph the graph degree; for DPG the source degree (0 = 2 * kappa).
  std::size_t K = 0;
  std::size_t kappa = 20;
  double rho = 0.5;
  double zeta = 0.002;
  std::size_t max_iters = 30;
  std::uint64_t seed = kDefaultSeed;
  std::size_t threads = 1;
};

struct BuildReport {
  NeighborGraph graph;
  double seconds = 0;
  std::uint64_t bytes = 0;
};

BuildReport build_index(const DenseDataset& base, const BuildOptions& options);

// ---- subcommands -------------------------------------------------------

struct GenOptions {
  std::string preset;  // empty: use the explicit fields below
  std::string kind = "rand";  // rand | gauss | line
  std::size_t n = 10000;
  std::size_t d = 32;
  std::size_t clusters = 10;
  double box = 10.0;
  double sigma = 1.0;
  std::optional<std::size_t> queries;
  double delta = 0.0;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out;  // writes <out>.base.fvecs, <out>.query.fvecs
};

struct SearchOptions {
  std::filesystem::path dataset, index, queries, gt, out;
  std::vector<std::size_t> pools = {20, 40, 80, 160, 320};
  std::size_t k = 20;
  std::size_t entries = 10;
  std::uint64_t seed = kDefaultSeed;
};

void cmd_gen(const GenOptions& options, std::ostream& log);
void cmd_gt(const std::filesystem::path& dataset, const std::filesystem::path& queries, std::size_t k,
            const std::filesystem::path& out, std::uint64_t seed, std::ostream& log);
void cmd_build(const std::filesystem::path& dataset, const BuildOptions& options, const std::filesystem::path& out,
               std::ostream& log);
void cmd_search(const SearchOptions& options, std::ostream& log);
void cmd_hardness(const std::filesystem::path& dataset, const std::filesystem::path& queries, std::size_t k,
                  std::size_t lid_neighbors, std::uint64_t seed, const std::filesystem::path& out, std::ostream& log);
void cmd_minhops(const std::filesystem::path& index, const std::filesystem::path& gt,
                 const std::filesystem::path& out, std::ostream& log);

}  // namespace dpg::bench
