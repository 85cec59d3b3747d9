#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace dpg {

/// Seeded random source with platform-independent output.
///
/// Built on std::mt19937_64, whose raw sequence is fixed by the standard.
/// The standard distribution classes are not, so the transforms are spelled
/// out here:
///   uniform()  top 53 bits of one draw, scaled to [0, 1)
///   below(n)   rejection sampling on the raw draw (no modulo bias)
///   normal()   Box-Muller on two uniforms, second variate cached
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  std::uint64_t below(std::uint64_t bound);
  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// SplitMix64 finalizer; derives independent seeds from (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// `count` distinct values from [0, n) in draw order. Duplicate draws are
/// rejected and redrawn. Requires count <= n.
std::vector<std::uint32_t> sample_distinct(Rng& rng, std::uint32_t n, std::size_t count);

}  // namespace dpg
