#pragma once

// Closed-form fixed points (p, p) of the two-tap filtered map and their
// linear stability.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "fhenon/grid.hpp"
#include "fhenon/map.hpp"

namespace fhenon {

enum class FixedPointBranch { P1, P2, Degenerate };

enum class Stability { Stable, Unstable, Marginal };

/// lambda_max within this distance of 1 is neither stable nor unstable.
inline constexpr double kMarginalBand = 1e-9;

Stability stability_of(double lambda_max) noexcept;

struct FixedPoint {
  double p = 0.0;  ///< the point is (p, p)
  FixedPointBranch branch = FixedPointBranch::P2;
  double lambda_max = 0.0;
  Stability stability = Stability::Unstable;

  bool stable() const noexcept { return stability == Stability::Stable; }
  StateVec state() const { return {p, p}; }
};

/// Fixed points of the two-tap map. Returns P1 (< 0) then P2 (> 0) when
/// c0 + c1 != 0, the single Degenerate point alpha / (1 - beta) when
/// c0 + c1 == 0, and an empty list when no real fixed point exists.
/// Depends on the coefficients only through (c0 + c1)^2.
std::vector<FixedPoint> fixed_points(const MapParams& p, const FilterCoeffs& c);

/// Eigenvalues of the Jacobian at (fp, fp): roots of l^2 - A l - B = 0 with
/// A = -2 c0 fp (c0 + c1), B = -2 c1 fp (c0 + c1) + beta.
std::array<std::complex<double>, 2> stability_eigenvalues(double fp, const MapParams& params,
                                                          const FilterCoeffs& c);

/// Largest eigenvalue modulus at (fp, fp). For a complex pair this is
/// sqrt(-B), the root product.
double stability_eigenvalue(double fp, const MapParams& params, const FilterCoeffs& c);

/// The fixed point continuing P2 (P2 itself, or the Degenerate point on the
/// line c0 + c1 = 0). Empty when there is none.
std::optional<FixedPoint> p2_of(const MapParams& p, const FilterCoeffs& c);

/// Boolean c0 x c1 raster, true where P2 is stable.
struct StabilityGrid {
  Axis c0_axis;
  Axis c1_axis;
  std::vector<unsigned char> cells;  ///< row-major, index = i0 * c1_axis.count + i1

  bool at(std::size_t i0, std::size_t i1) const { return cells[i0 * c1_axis.count + i1] != 0; }
  std::size_t stable_count() const;
};

StabilityGrid stability_region(const MapParams& p, const Axis& c0_axis, const Axis& c1_axis);

struct P1ScanResult {
  bool all_unstable = true;
  std::size_t cells_checked = 0;
  std::size_t degenerate_cells = 0;  ///< c0 + c1 == 0 exactly; P1 does not exist there
  double min_lambda = 0.0;
};

/// Checks that P1 is unstable at every grid point where it exists.
P1ScanResult p1_unstable_scan(const MapParams& p, const Axis& c0_axis, const Axis& c1_axis);

inline bool p1_always_unstable_scan(const MapParams& p, const Axis& c0_axis, const Axis& c1_axis) {
  return p1_unstable_scan(p, c0_axis, c1_axis).all_unstable;
}

}  // namespace fhenon
