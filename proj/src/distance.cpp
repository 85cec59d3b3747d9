#include "dpg/distance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpg/error.hpp"

namespace dpg {

float l2(std::span<const float> a, std::span<const float> b) noexcept {
  return static_cast<float>(std::sqrt(squared_l2(a, b)));
}

float euclidean_distance(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw UsageError("distance between vectors of dimension " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()));
  }
  return l2(a, b);
}

double angle_at(std::span<const float> p, std::span<const float> x, std::span<const float> y) {
  if (p.size() != x.size() || p.size() != y.size()) {
    throw UsageError("angle_at: vectors have different dimensions");
  }
  double dot = 0, nx = 0, ny = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double u = double(x[i]) - p[i];
    const double v = double(y[i]) - p[i];
    dot += u * v;
    nx += u * u;
    ny += v * v;
  }
  if (nx == 0.0 || ny == 0.0) throw GeometryError("angle_at: arm of zero length");
  const double c = std::clamp(dot / std::sqrt(nx * ny), -1.0, 1.0);
  return std::acos(c);
}

}  // namespace dpg
