#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "dpg/exact.hpp"
#include "dpg/types.hpp"

namespace dpg::io {

// All formats are little-endian regardless of host byte order.
//
// fvecs / ivecs: per record, an int32 dimension d followed by d float32
// (fvecs) or int32 (ivecs) values. Every record shares the same d.
//
// DPGI index:
//   "DPGI" | u32 version | u32 kind (0 = knn, 1 = dpg) | u32 n | u32 K-or-kappa
//   then per node: u32 degree, degree x (u32 id, f32 dist)

inline constexpr std::uint32_t kIndexVersion = 1;

/// Throws FormatError (with byte offset) on truncated records, d <= 0 or a
/// dimension change; UsageError if the file cannot be opened or is empty.
VectorSet read_fvecs(const std::filesystem::path& path);
void write_fvecs(const VectorSet& vectors, const std::filesystem::path& path);

/// Rows of int32 values, all of equal length.
struct IntRows {
  std::size_t dim = 0;
  std::vector<std::vector<std::int32_t>> rows;
};

IntRows read_ivecs(const std::filesystem::path& path);
void write_ivecs(const IntRows& rows, const std::filesystem::path& path);

void save_index(const NeighborGraph& graph, const std::filesystem::path& path);
/// Rejects bad magic, unknown versions or kinds, truncation, and any graph
/// that breaks the invariants of its kind (FormatError).
NeighborGraph load_index(const std::filesystem::path& path);

/// Size in bytes that save_index writes for `graph`.
std::uint64_t index_bytes(const NeighborGraph& graph);

/// Ground truth persisted under a prefix: <prefix>.ids.ivecs,
/// <prefix>.dist.fvecs and <prefix>.meta.json (k, query count, baseline
/// time in seconds, seed).
void save_ground_truth(const GroundTruth& gt, const std::filesystem::path& prefix, std::uint64_t seed);
GroundTruth load_ground_truth(const std::filesystem::path& prefix);

}  // namespace dpg::io
