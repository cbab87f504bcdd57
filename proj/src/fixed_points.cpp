#include "fhenon/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fhenon {

Stability stability_of(double lambda_max) noexcept {
  if (std::abs(lambda_max - 1.0) <= kMarginalBand) return Stability::Marginal;
  return lambda_max < 1.0 ? Stability::Stable : Stability::Unstable;
}

namespace {

FixedPoint make_point(double p, FixedPointBranch branch, const MapParams& params,
                      const FilterCoeffs& c) {
  FixedPoint fp;
  fp.p = p;
  fp.branch = branch;
  fp.lambda_max = stability_eigenvalue(p, params, c);
  fp.stability = stability_of(fp.lambda_max);
  return fp;
}

}  // namespace

std::vector<FixedPoint> fixed_points(const MapParams& params, const FilterCoeffs& c) {
  c.require_two_taps();
  const double s = c[0] + c[1];
  const double a = s * s;
  const double b = 1.0 - params.beta;
  const double alpha = params.alpha;

  if (a == 0.0) {
    // Linear map: (1 - beta) p = alpha.
    if (b == 0.0) return {};
    return {make_point(alpha / b, FixedPointBranch::Degenerate, params, c)};
  }

  // a p^2 + b p - alpha = 0
  const double disc = b * b + 4.0 * alpha * a;
  if (disc < 0.0) return {};

  // Cancellation-free pair: q = -(b + sign(b) sqrt(disc)) / 2, roots q/a and -alpha/q.
  const double root = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(root, b));
  double r1 = q / a;
  double r2 = q != 0.0 ? -alpha / q : -r1;
  if (r1 > r2) std::swap(r1, r2);
  return {make_point(r1, FixedPointBranch::P1, params, c),
          make_point(r2, FixedPointBranch::P2, params, c)};
}

std::array<std::complex<double>, 2> stability_eigenvalues(double fp, const MapParams& params,
                                                          const FilterCoeffs& c) {
  c.require_two_taps();
  const double ps = fp * (c[0] + c[1]);
  const double A = -2.0 * c[0] * ps;
  const double B = -2.0 * c[1] * ps + params.beta;
  const double disc = A * A + 4.0 * B;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    return {std::complex<double>(0.5 * (A + r), 0.0), std::complex<double>(0.5 * (A - r), 0.0)};
  }
  const double im = 0.5 * std::sqrt(-disc);
  return {std::complex<double>(0.5 * A, im), std::complex<double>(0.5 * A, -im)};
}

double stability_eigenvalue(double fp, const MapParams& params, const FilterCoeffs& c) {
  c.require_two_taps();
  const double ps = fp * (c[0] + c[1]);
  const double A = -2.0 * c[0] * ps;
  const double B = -2.0 * c[1] * ps + params.beta;
  const double disc = A * A + 4.0 * B;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    return std::max(std::abs(0.5 * (A + r)), std::abs(0.5 * (A - r)));
  }
  // Complex pair: |l|^2 = l * conj(l) = -B.
  return std::sqrt(-B);
}

std::optional<FixedPoint> p2_of(const MapParams& p, const FilterCoeffs& c) {
  auto pts = fixed_points(p, c);
  if (pts.empty()) return std::nullopt;
  return pts.back();
}

std::size_t StabilityGrid::stable_count() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), 1));
}

StabilityGrid stability_region(const MapParams& p, const Axis& c0_axis, const Axis& c1_axis) {
  c0_axis.validate();
  c1_axis.validate();
  StabilityGrid g{c0_axis, c1_axis, {}};
  g.cells.assign(c0_axis.count * c1_axis.count, 0);
  for (std::size_t i = 0; i < c0_axis.count; ++i) {
    for (std::size_t j = 0; j < c1_axis.count; ++j) {
      const auto p2 = p2_of(p, FilterCoeffs{c0_axis.at(i), c1_axis.at(j)});
      g.cells[i * c1_axis.count + j] = (p2 && p2->stable()) ? 1 : 0;
    }
  }
  return g;
}

P1ScanResult p1_unstable_scan(const MapParams& p, const Axis& c0_axis, const Axis& c1_axis) {
  c0_axis.validate();
  c1_axis.validate();
  P1ScanResult r;
  r.min_lambda = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c0_axis.count; ++i) {
    for (std::size_t j = 0; j < c1_axis.count; ++j) {
      const auto pts = fixed_points(p, FilterCoeffs{c0_axis.at(i), c1_axis.at(j)});
      if (pts.size() != 2) {
        ++r.degenerate_cells;
        continue;
      }
      ++r.cells_checked;
      r.min_lambda = std::min(r.min_lambda, pts.front().lambda_max);
      if (pts.front().stability != Stability::Unstable) r.all_unstable = false;
    }
  }
  return r;
}

}  // namespace fhenon
