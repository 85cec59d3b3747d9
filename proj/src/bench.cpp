#include "dpg/bench.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dpg/error.hpp"
#include "dpg/rng.hpp"
#include "dpg/vec_io.hpp"

namespace dpg::bench {

namespace {

std::string base_path(const std::filesystem::path& prefix) { return prefix.string() + ".base.fvecs"; }
std::string query_path(const std::filesystem::path& prefix) { return prefix.string() + ".query.fvecs"; }

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open '" + path.string() + "' for writing");
  out << std::setprecision(6);
  return out;
}

DenseDataset load_dataset(const std::filesystem::path& path) { return DenseDataset(io::read_fvecs(path)); }

QuerySet load_queries(const std::filesystem::path& path, const DenseDataset& base) {
  QuerySet q(io::read_fvecs(path));
  if (q.dim() != base.dim()) {
    throw UsageError("queries in '" + path.string() + "' have d=" + std::to_string(q.dim()) +
                     " but the dataset has d=" + std::to_string(base.dim()));
  }
  return q;
}

void check_gt(const GroundTruth& gt, const QuerySet& queries, std::size_t k, std::size_t n) {
  if (gt.k != k) {
    throw UsageError("ground truth has k=" + std::to_string(gt.k) + " but --k=" + std::to_string(k));
  }
  if (gt.size() != queries.size()) {
    throw UsageError("ground truth covers " + std::to_string(gt.size()) + " queries but the query file has " +
                     std::to_string(queries.size()));
  }
  for (const auto& list : gt.lists) {
    for (const auto& e : list) {
      if (e.id >= n) throw UsageError("ground truth id " + std::to_string(e.id) + " exceeds dataset size " +
                                      std::to_string(n));
    }
  }
}

}  // namespace

Workload make_workload(const Preset& preset, std::uint64_t seed, std::size_t queries, double delta) {
  auto [base, q] = split_queries(generate(preset, seed), queries, derive_seed(seed, 1));
  if (delta > 0.0) q = perturb_queries(q, delta, derive_seed(seed, 2));
  return {std::move(base), std::move(q)};
}

std::vector<QueryOutcome> run_queries(const DenseDataset& base, const NeighborGraph& graph, const QuerySet& queries,
                                      const GroundTruth& gt, const SearchParams& params) {
  if (gt.size() != queries.size()) throw UsageError("ground truth and query counts differ");
  if (gt.k < params.k) throw UsageError("ground truth holds fewer than k neighbors");
  GraphSearcher searcher(base, graph);
  std::vector<QueryOutcome> out;
  out.reserve(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    SearchParams p = params;
    p.seed = derive_seed(params.seed, q);
    const auto res = searcher.search(queries.row(q), p);
    const auto truth = ids_of(std::span(gt.lists[q]).first(params.k));
    out.push_back({recall(ids_of(res.neighbors), truth), res.stats});
  }
  return out;
}

SweepRow summarize(std::span<const QueryOutcome> outcomes, std::size_t pool, std::size_t k, std::size_t n,
                   double baseline_seconds) {
  SweepRow row;
  row.pool = pool;
  row.k = k;
  if (outcomes.empty()) return row;
  for (const auto& o : outcomes) {
    row.mean_recall += o.recall;
    row.mean_distance_computations += static_cast<double>(o.stats.distance_computations);
    row.mean_hops += static_cast<double>(o.stats.hops);
    row.mean_seconds += o.stats.seconds;
  }
  const double m = static_cast<double>(outcomes.size());
  row.mean_recall /= m;
  row.mean_distance_computations /= m;
  row.mean_hops /= m;
  row.mean_seconds /= m;
  row.pct_points_accessed = row.mean_distance_computations / static_cast<double>(n) * 100.0;
  row.speedup = row.mean_seconds > 0 ? baseline_seconds / row.mean_seconds : 0.0;
  return row;
}

std::vector<SweepRow> sweep_search(const DenseDataset& base, const NeighborGraph& graph, const QuerySet& queries,
                                   const GroundTruth& gt, std::span<const std::size_t> pools, std::size_t k,
                                   std::size_t entries, std::uint64_t seed) {
  std::vector<SweepRow> rows;
  for (auto L : pools) {
    const SearchParams params{k, L, entries, seed};
    const auto outcomes = run_queries(base, graph, queries, gt, params);
    rows.push_back(summarize(outcomes, L, k, base.size(), gt.baseline_seconds));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, const std::string& provenance) {
  const auto saved = out.precision(6);
  out << "# " << provenance << '\n';
  out << "L,k,mean_recall,speedup,mean_N,pct_points_accessed,mean_hops\n";
  for (const auto& r : rows) {
    out << r.pool << ',' << r.k << ',' << r.mean_recall << ',' << r.speedup << ',' << r.mean_distance_computations
        << ',' << r.pct_points_accessed << ',' << r.mean_hops << '\n';
  }
  out.precision(saved);
}

Algo parse_algo(const std::string& name) {
  if (name == "kgraph") return Algo::KGraph;
  if (name == "dpg-angular") return Algo::DpgAngular;
  if (name == "dpg-counting") return Algo::DpgCounting;
  throw UsageError("unknown algorithm '" + name + "' (expected kgraph, dpg-angular or dpg-counting)");
}

BuildReport build_index(const DenseDataset& base, const BuildOptions& options) {
  NnDescentParams knn;
  knn.sample_rate = options.rho;
  knn.termination = options.zeta;
  knn.max_iters = options.max_iters;
  knn.seed = options.seed;
  knn.threads = options.threads;

  const auto start = std::chrono::steady_clock::now();
  NeighborGraph graph;
  if (options.algo == Algo::KGraph) {
    knn.K = options.K ? options.K : 40;
    graph = build_knn_graph(base, knn);
  } else {
    DpgParams dpg;
    dpg.kappa = options.kappa;
    dpg.source_degree = options.K;
    dpg.method = options.algo == Algo::DpgAngular ? Diversification::Angular : Diversification::Counting;
    graph = build_dpg(base, dpg, knn);
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  const auto bytes = io::index_bytes(graph);
  return {std::move(graph), elapsed.count(), bytes};
}

void cmd_gen(const GenOptions& options, std::ostream& log) {
  if (options.out.empty()) throw UsageError("gen needs --out");
  Preset preset;
  if (!options.preset.empty()) {
    preset = find_preset(options.preset);
  } else {
    preset.name = "custom";
    if (options.kind == "rand") {
      preset.kind = Preset::Kind::Hypersphere;
    } else if (options.kind == "gauss") {
      preset.kind = Preset::Kind::GaussClusters;
    } else if (options.kind == "line") {
      preset.kind = Preset::Kind::Line;
    } else {
      throw UsageError("unknown generator kind '" + options.kind + "' (expected rand, gauss or line)");
    }
    preset.n = options.n;
    preset.d = preset.kind == Preset::Kind::Line ? 1 : options.d;
    preset.clusters = options.clusters;
    preset.box_hi = options.box;
    preset.sigma = options.sigma;
  }
  const std::size_t m = options.queries.value_or(preset.queries);
  const Workload w = make_workload(preset, options.seed, m, options.delta);
  io::write_fvecs(w.base, base_path(options.out));
  io::write_fvecs(w.queries, query_path(options.out));
  log << "preset=" << preset.name << " seed=" << options.seed << " n=" << w.base.size() << " d=" << w.base.dim()
      << " queries=" << w.queries.size() << " delta=" << options.delta << '\n'
      << "wrote " << base_path(options.out) << " and " << query_path(options.out) << '\n';
}

void cmd_gt(const std::filesystem::path& dataset, const std::filesystem::path& queries, std::size_t k,
            const std::filesystem::path& out, std::uint64_t seed, std::ostream& log) {
  const auto base = load_dataset(dataset);
  const auto q = load_queries(queries, base);
  const auto gt = build_ground_truth(base, q, k);
  io::save_ground_truth(gt, out, seed);
  log << "k=" << k << " queries=" << q.size() << " baseline_seconds=" << std::setprecision(6) << gt.baseline_seconds
      << '\n';
}

void cmd_build(const std::filesystem::path& dataset, const BuildOptions& options, const std::filesystem::path& out,
               std::ostream& log) {
  const auto base = load_dataset(dataset);
  const auto report = build_index(base, options);
  io::save_index(report.graph, out);
  log << std::setprecision(6) << "seed=" << options.seed << " n=" << report.graph.size()
      << " edges=" << report.graph.edge_count() << " build_seconds=" << report.seconds
      << " index_bytes=" << report.bytes << '\n';
}

void cmd_search(const SearchOptions& o, std::ostream& log) {
  const auto base = load_dataset(o.dataset);
  const auto graph = io::load_index(o.index);
  if (graph.size() != base.size()) {
    throw UsageError("index has n=" + std::to_string(graph.size()) + " nodes but the dataset has n=" +
                     std::to_string(base.size()) + " points");
  }
  const auto queries = load_queries(o.queries, base);
  const auto gt = io::load_ground_truth(o.gt);
  check_gt(gt, queries, o.k, base.size());
  if (o.pools.empty()) throw UsageError("--pool needs at least one value");

  const auto rows = sweep_search(base, graph, queries, gt, o.pools, o.k, o.entries, o.seed);
  std::ostringstream provenance;
  provenance << "search seed=" << o.seed << " k=" << o.k << " entries=" << o.entries << " n=" << base.size()
             << " queries=" << queries.size();
  auto out = open_out(o.out);
  write_sweep_csv(out, rows, provenance.str());
  log << "wrote " << rows.size() << " rows to " << o.out.string() << '\n';
}

void cmd_hardness(const std::filesystem::path& dataset, const std::filesystem::path& queries, std::size_t k,
                  std::size_t lid_neighbors, std::uint64_t seed, const std::filesystem::path& out, std::ostream& log) {
  const auto base = load_dataset(dataset);
  const auto q = load_queries(queries, base);
  const auto r = hardness_report(base, q, k, lid_neighbors, seed);
  auto csv = open_out(out);
  csv << "# hardness seed=" << seed << " k=" << k << " lid_neighbors=" << lid_neighbors << '\n'
      << "metric,value\n"
      << "rc," << r.contrast.rc << '\n'
      << "rc_k," << r.contrast.rc_k << '\n'
      << "lid," << r.lid.lid << '\n'
      << "rc_queries_used," << r.contrast.queries_used << '\n'
      << "rc_queries_excluded," << r.contrast.queries_excluded << '\n'
      << "dmean_sample_size," << r.contrast.mean_sample_size << '\n'
      << "lid_queries_used," << r.lid.queries_used << '\n'
      << "lid_queries_dropped," << r.lid.queries_dropped << '\n';
  if (r.lid.diverged) log << "warning: flat distance profile, LID diverged\n";
  log << std::setprecision(6) << "rc=" << r.contrast.rc << " rc_k=" << r.contrast.rc_k << " lid=" << r.lid.lid << '\n';
}

void cmd_minhops(const std::filesystem::path& index, const std::filesystem::path& gt_prefix,
                 const std::filesystem::path& out, std::ostream& log) {
  const auto graph = io::load_index(index);
  const auto gt = io::load_ground_truth(gt_prefix);
  std::vector<MinHopsHistogram> parts;
  parts.reserve(gt.size());
  for (const auto& list : gt.lists) {
    const auto targets = ids_of(list);
    for (auto t : targets) {
      if (t >= graph.size()) throw UsageError("ground truth id " + std::to_string(t) + " exceeds index size " +
                                              std::to_string(graph.size()));
    }
    parts.push_back(min_hops_histogram(graph, targets));
  }
  const auto mean = mean_histogram(parts);
  auto csv = open_out(out);
  csv << "# minhops queries=" << gt.size() << " k=" << gt.k << " n=" << graph.size() << '\n' << "hops,fraction\n";
  for (std::size_t h = 0; h < mean.by_hops.size(); ++h) csv << h << ',' << mean.by_hops[h] << '\n';
  csv << "inf," << mean.unreachable << '\n';
  log << std::setprecision(6) << "unreachable_fraction=" << mean.unreachable << '\n';
}

}  // namespace dpg::bench
