#pragma once

// Parameter sweeps: bifurcation diagrams along one coefficient, and
// Lyapunov / period maps over the (c0, c1) plane.
//
// Grid cell (i, j) sits at (c0_axis.at(i), c1_axis.at(j)) and is stored at
// flat index i * c1_axis.count + j. Its random initial conditions come from
// cell_seed(seed, i, j), so a grid is a pure function of its spec and seed.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fhenon/attractor.hpp"
#include "fhenon/grid.hpp"
#include "fhenon/lyapunov.hpp"
#include "fhenon/map.hpp"

namespace fhenon {

enum class SweepAxis { C0, C1 };
enum class SweepDirection { Forward, Backward };

struct BifurcationConfig {
  ClassifyConfig classify;
  /// x1 values recorded per non-periodic point.
  std::size_t record = 256;
  /// Seed each point with the final state of the previous one.
  bool continuation = true;
  SweepDirection direction = SweepDirection::Forward;
  /// Fresh initial conditions (first point, and after divergence) are drawn
  /// from this box with derive_seed(seed, point index).
  IcBox restart_box;
  std::uint64_t seed = 1;
  /// Compute h for periodic points too.
  bool h_for_periodic = true;
};

struct BifurcationSample {
  double c = 0.0;
  std::vector<double> x1;  ///< cycle values, or a stretch of the tail; empty when divergent
  AttractorKind kind = AttractorKind::Divergent;
  int period = 0;
  std::optional<double> h;
  StateVec ic;             ///< state the point started from
  bool restarted = false;  ///< ic came from the seeded generator
};

struct BifurcationDiagram {
  SweepAxis axis = SweepAxis::C1;
  double fixed_value = 0.0;  ///< the coefficient held constant
  bool continuation = true;
  SweepDirection direction = SweepDirection::Forward;
  std::vector<BifurcationSample> samples;  ///< ascending c
};

/// Sweeps one coefficient across `sweep` with the other held at
/// `fixed_value`. With continuation the sweep runs in `direction` and
/// follows the attractor.
BifurcationDiagram bifurcation_1d(const MapParams& p, SweepAxis axis, double fixed_value,
                                  const Axis& sweep, const BifurcationConfig& cfg);

inline BifurcationDiagram bifurcation_1d(const MapParams& p, double fixed_c0, const Axis& c1_sweep,
                                         const BifurcationConfig& cfg) {
  return bifurcation_1d(p, SweepAxis::C1, fixed_c0, c1_sweep, cfg);
}

struct CellResult {
  double c0 = 0.0;
  double c1 = 0.0;
  double h_mean = 0.0;  ///< NaN when no initial condition stayed bounded
  double h_std = 0.0;
  AttractorKind kind = AttractorKind::Divergent;
  int period = 0;  ///< 0 unless FixedPoint (1) or Periodic (k)
  std::size_t n_valid = 0;

  std::optional<int> period_opt() const {
    return period > 0 ? std::optional<int>(period) : std::nullopt;
  }
};

struct SweepConfig {
  ClassifyConfig classify;
  /// Per-cell ensemble. n_ics defaults to 5 for maps; seed is ignored (cells
  /// derive their own).
  LyapunovConfig lyapunov = [] {
    LyapunovConfig c;
    c.n_ics = 5;
    return c;
  }();
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct SweepGrid {
  Axis c0_axis;
  Axis c1_axis;
  std::uint64_t seed = 0;
  std::vector<CellResult> cells;

  const CellResult& at(std::size_t i0, std::size_t i1) const { return cells[i0 * c1_axis.count + i1]; }
};

std::uint64_t cell_seed(std::uint64_t grid_seed, std::size_t i0, std::size_t i1) noexcept;

/// A cell to evaluate: coefficients plus the seed of its initial conditions.
struct CellSpec {
  double c0 = 0.0;
  double c1 = 0.0;
  std::uint64_t seed = 0;
};

/// Lyapunov-map cell: ensemble of lyapunov.n_ics ICs; kind from the period
/// of the first bounded IC, else from h_mean.
std::vector<CellResult> evaluate_lyapunov_cells(const MapParams& p, std::span<const CellSpec> cells,
                                                const SweepConfig& cfg);

/// Period-map cell: classify() from one IC (the first ensemble IC of the
/// cell seed), with h for every bounded orbit.
std::vector<CellResult> evaluate_period_cells(const MapParams& p, std::span<const CellSpec> cells,
                                              const SweepConfig& cfg);

SweepGrid lyapunov_map_2d(const MapParams& p, const Axis& c0_axis, const Axis& c1_axis,
                          const SweepConfig& cfg);

SweepGrid period_map_2d(const MapParams& p, const Axis& c0_axis, const Axis& c1_axis,
                        const SweepConfig& cfg);

}  // namespace fhenon
