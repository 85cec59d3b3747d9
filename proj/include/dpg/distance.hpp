#pragma once

#include <cstddef>
#include <span>

namespace dpg {

/// Squared L2 distance with double accumulation. No size check; callers
/// guarantee a.size() == b.size().
inline double squared_l2(std::span<const float> a, std::span<const float> b) noexcept {
  const float* x = a.data();
  const float* y = b.data();
  const std::size_t d = a.size();
  // four independent accumulators, combined in fixed order
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t i = 0;
  for (; i + 4 <= d; i += 4) {
    const double t0 = double(x[i]) - y[i];
    const double t1 = double(x[i + 1]) - y[i + 1];
    const double t2 = double(x[i + 2]) - y[i + 2];
    const double t3 = double(x[i + 3]) - y[i + 3];
    s0 += t0 * t0;
    s1 += t1 * t1;
    s2 += t2 * t2;
    s3 += t3 * t3;
  }
  for (; i < d; ++i) {
    const double t = double(x[i]) - y[i];
    s0 += t * t;
  }
  return (s0 + s1) + (s2 + s3);
}

/// Euclidean distance rounded to float, the precision stored on edges.
float l2(std::span<const float> a, std::span<const float> b) noexcept;

/// Checked Euclidean distance. Throws UsageError on dimension mismatch.
float euclidean_distance(std::span<const float> a, std::span<const float> b);

/// Angle (radians, in [0, pi]) at `p` between the rays toward `x` and `y`.
/// Throws GeometryError if x or y coincides with p, UsageError on
/// dimension mismatch.
double angle_at(std::span<const float> p, std::span<const float> x, std::span<const float> y);

}  // namespace dpg
