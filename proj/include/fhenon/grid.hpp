#pragma once

#include <cstddef>
#include <stdexcept>

namespace fhenon {

/// Closed interval [lo, hi] sampled at `count` evenly spaced points that
/// include both ends. A single sample sits at the midpoint.
struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 1;

  void validate() const {
    if (count < 1) throw std::invalid_argument("axis needs at least one sample");
    if (!(lo <= hi)) throw std::invalid_argument("axis range must satisfy lo <= hi");
  }

  /// Written as a weighted mean so that an axis symmetric about zero yields
  /// exactly negated values at mirrored indices.
  double at(std::size_t i) const noexcept {
    if (count == 1) return 0.5 * lo + 0.5 * hi;
    const double n = static_cast<double>(count - 1);
    const double k = static_cast<double>(i);
    return (lo * (n - k) + hi * k) / n;
  }

  /// Index of the sample nearest to v (clamped).
  std::size_t nearest(double v) const noexcept {
    if (count == 1 || hi == lo) return 0;
    const double t = (v - lo) / (hi - lo) * static_cast<double>(count - 1);
    if (t <= 0) return 0;
    const auto i = static_cast<std::size_t>(t + 0.5);
    return i >= count ? count - 1 : i;
  }
};

}  // namespace fhenon
