#include "dpg/workload.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpg/error.hpp"
#include "dpg/rng.hpp"

namespace dpg {

namespace {

// Fills `out` with a uniform direction on the unit sphere.
void random_direction(Rng& rng, std::vector<double>& out) {
  double norm = 0;
  do {
    norm = 0;
    for (auto& v : out) {
      v = rng.normal();
      norm += v * v;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (auto& v : out) v /= norm;
}

void require_shape(std::size_t n, std::size_t d) {
  if (n == 0 || d == 0) throw UsageError("generated datasets need n >= 1 and d >= 1");
}

}  // namespace

DenseDataset gen_random_hypersphere(std::size_t n, std::size_t d, std::uint64_t seed) {
  require_shape(n, d);
  Rng rng(seed);
  std::vector<float> data;
  data.reserve(n * d);
  std::vector<double> dir(d);
  const double inv_d = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < n; ++i) {
    random_direction(rng, dir);
    const double radius = std::pow(rng.uniform(), inv_d);
    for (double v : dir) data.push_back(static_cast<float>(v * radius));
  }
  return DenseDataset(n, d, std::move(data));
}

DenseDataset gen_gauss_clusters(std::size_t n, std::size_t d, std::size_t num_clusters, double box_hi,
                                double sigma, std::uint64_t seed) {
  require_shape(n, d);
  if (num_clusters == 0) throw UsageError("need at least one cluster");
  if (!(sigma >= 0.0) || !(box_hi >= 0.0)) throw UsageError("sigma and box size must be nonnegative");
  Rng rng(seed);
  std::vector<double> centers(num_clusters * d);
  for (auto& c : centers) c = rng.uniform() * box_hi;

  std::vector<float> data;
  data.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = rng.below(num_clusters);
    for (std::size_t j = 0; j < d; ++j) data.push_back(static_cast<float>(centers[c * d + j] + sigma * rng.normal()));
  }
  return DenseDataset(n, d, std::move(data));
}

DenseDataset gen_line(std::size_t n) {
  require_shape(n, 1);
  std::vector<float> data(n);
  for (std::size_t i = 0; i < n; ++i) data[i] = static_cast<float>(i);
  return DenseDataset(n, 1, std::move(data));
}

std::pair<DenseDataset, QuerySet> split_queries(const DenseDataset& dataset, std::size_t m, std::uint64_t seed) {
  const std::size_t n = dataset.size();
  if (m == 0 || m >= n) {
    throw UsageError("query count must be in [1, n) (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
  }
  Rng rng(seed);
  const auto picked = sample_distinct(rng, static_cast<std::uint32_t>(n), m);
  std::vector<char> is_query(n, 0);
  for (auto i : picked) is_query[i] = 1;

  const std::size_t d = dataset.dim();
  std::vector<float> base, query;
  base.reserve((n - m) * d);
  query.reserve(m * d);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_query[i]) continue;
    const auto r = dataset.row(i);
    base.insert(base.end(), r.begin(), r.end());
  }
  // queries keep their draw order
  for (auto i : picked) {
    const auto r = dataset.row(i);
    query.insert(query.end(), r.begin(), r.end());
  }
  return {DenseDataset(n - m, d, std::move(base)), QuerySet(m, d, std::move(query))};
}

QuerySet perturb_queries(const QuerySet& queries, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw UsageError("perturbation length must be nonnegative");
  const std::size_t d = queries.dim();
  Rng rng(seed);
  std::vector<double> dir(d);
  std::vector<float> data;
  data.reserve(queries.size() * d);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    random_direction(rng, dir);
    const auto r = queries.row(q);
    for (std::size_t j = 0; j < d; ++j) data.push_back(static_cast<float>(r[j] + delta * dir[j]));
  }
  return QuerySet(queries.size(), d, std::move(data));
}

const std::vector<Preset>& presets() {
  using K = Preset::Kind;
  static const std::vector<Preset> all = {
      {"rand-10k-d32", K::Hypersphere, 10000, 32, 0, 10.0, 1.0, 200},
      {"rand-5k-d20", K::Hypersphere, 5000, 20, 0, 10.0, 1.0, 200},
      {"gauss-10k-d32-c10", K::GaussClusters, 10000, 32, 10, 10.0, 1.0, 200},
      {"line-1k", K::Line, 1000, 1, 0, 10.0, 1.0, 20},
      {"rand-1m-d100", K::Hypersphere, 1000000, 100, 0, 10.0, 1.0, 200},
      {"gauss-1m-d512-c1000", K::GaussClusters, 1000000, 512, 1000, 10.0, 1.0, 200},
  };
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw UsageError("unknown preset '" + name + "' (known: " + known + ")");
}

DenseDataset generate(const Preset& preset, std::uint64_t seed) {
  switch (preset.kind) {
    case Preset::Kind::Hypersphere:
      return gen_random_hypersphere(preset.n, preset.d, seed);
    case Preset::Kind::GaussClusters:
      return gen_gauss_clusters(preset.n, preset.d, preset.clusters, preset.box_hi, preset.sigma, seed);
    case Preset::Kind::Line:
      return gen_line(preset.n);
  }
  throw UsageError("unhandled preset kind");
}

}  // namespace dpg
