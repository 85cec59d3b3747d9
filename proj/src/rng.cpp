#include "dpg/rng.hpp"

#include <cmath>
#include <numbers>
#include <unordered_set>

#include "dpg/error.hpp"

namespace dpg {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw UsageError("Rng::below: empty range");
  // largest multiple of bound that fits in 64 bits
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r > limit);
  return r % bound;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(theta);
  has_cached_ = true;
  return radius * std::cos(theta);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<std::uint32_t> sample_distinct(Rng& rng, std::uint32_t n, std::size_t count) {
  if (count > n) throw UsageError("cannot draw more distinct values than the range holds");
  std::vector<std::uint32_t> out;
  out.reserve(count);
  if (count * 2 > n) {
    // dense draw: partial Fisher-Yates
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t i = 0; i < n; ++i) all[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
      const auto j = i + rng.below(n - i);
      std::swap(all[i], all[j]);
      out.push_back(all[i]);
    }
    return out;
  }
  std::unordered_set<std::uint32_t> seen;
  while (out.size() < count) {
    const auto v = static_cast<std::uint32_t>(rng.below(n));
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace dpg
