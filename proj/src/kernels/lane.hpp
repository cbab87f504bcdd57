#pragma once

// Single-lane reference routines. The SIMD kernels use these for the tail
// lanes that do not fill a full vector, so every lane goes through exactly
// one arithmetic definition per ISA.

#include <cmath>
#include <cstdint>
#include <span>

#include "fhenon/kernels.hpp"

namespace fhenon::kernels::detail {
// Internal linkage: this header is compiled under different ISA flags.
namespace {

inline bool bounded(double x1, double guard) noexcept { return (x1 < 0 ? -x1 : x1) <= guard; }

inline bool renormalizes_at(const TangentSchedule& s, std::int64_t t) noexcept {
  const std::int64_t n = t + 1;
  return n % s.renorm_interval == 0 || n == s.steps || n == s.accumulate_from;
}

inline void advance_lane(const MapParams& p, double c0, double c1, double& x1, double& x2,
                         std::int64_t& escaped_at, std::int64_t steps, std::int64_t step_base,
                         double guard, double* x1_out) {
  if (escaped_at >= 0) return;
  for (std::int64_t t = 0; t < steps; ++t) {
    const double u = c0 * x1 + c1 * x2;
    const double nx1 = p.alpha - u * u + p.beta * x2;
    if (!bounded(nx1, guard)) {
      escaped_at = step_base + t + 1;
      return;
    }
    x2 = x1;
    x1 = nx1;
    if (x1_out) x1_out[t] = nx1;
  }
}

inline void tangent_lane(const MapParams& p, double c0, double c1, double& x1, double& x2,
                         std::int64_t& escaped_at, double& v1, double& v2, double& log_sum,
                         const TangentSchedule& s, std::int64_t step_base, double guard) {
  if (escaped_at >= 0) return;
  const double j11c = -2.0 * c0;
  const double j12c = -2.0 * c1;
  for (std::int64_t t = 0; t < s.steps; ++t) {
    const double u = c0 * x1 + c1 * x2;
    const double nv1 = j11c * u * v1 + (j12c * u + p.beta) * v2;
    const double nv2 = v1;
    const double nx1 = p.alpha - u * u + p.beta * x2;
    if (!bounded(nx1, guard)) {
      escaped_at = step_base + t + 1;
      return;
    }
    x2 = x1;
    x1 = nx1;
    v1 = nv1;
    v2 = nv2;
    if (renormalizes_at(s, t)) {
      const double nr = std::sqrt(v1 * v1 + v2 * v2);
      v1 = v1 / nr;
      v2 = v2 / nr;
      if (t >= s.accumulate_from) log_sum += std::log(nr);
    }
  }
}

}  // namespace
}  // namespace fhenon::kernels::detail
