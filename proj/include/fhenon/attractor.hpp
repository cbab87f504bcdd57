#pragma once

// Long-run classification of orbits and detection of coexisting attractors.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fhenon/grid.hpp"
#include "fhenon/lyapunov.hpp"
#include "fhenon/map.hpp"

namespace fhenon {

enum class AttractorKind { Divergent, FixedPoint, Periodic, Chaotic, Marginal };

std::string_view kind_name(AttractorKind kind) noexcept;
std::optional<AttractorKind> parse_kind(std::string_view name) noexcept;

struct ClassifyConfig {
  std::int64_t transient = 1000;
  std::int64_t tail = 512;
  double tol = 1e-6;  ///< infinity norm
  int max_period = 64;
  double h_threshold = 1e-3;
  double guard = kDefaultGuard;
  /// Settings for the exponent of non-periodic orbits, measured from the
  /// state at the end of the tail. Only n_total, renorm_interval and
  /// accumulation are used.
  LyapunovConfig lyapunov;

  void validate() const;
};

struct AttractorClass {
  AttractorKind kind = AttractorKind::Divergent;
  int period = 0;           ///< 1 for FixedPoint, k for Periodic, 0 otherwise
  std::optional<double> h;  ///< absent for Divergent; absent for periodic unless requested
  std::vector<StateVec> cycle;
  bool negative_h = false;  ///< Marginal because h < -h_threshold with no period found
  StateVec end_state;       ///< last state reached (continuation seed)
  std::optional<std::int64_t> escaped_at;

  bool periodic() const noexcept {
    return kind == AttractorKind::FixedPoint || kind == AttractorKind::Periodic;
  }
};

/// Smallest k <= max_period with |s(n) - s(n-k)|_inf < tol for each of the
/// last max_period samples. Requires tail.size() >= 2 * max_period.
std::optional<int> detect_period(std::span<const StateVec> tail, double tol, int max_period);

/// detect_period() over the two-tap states implied by an x1 series:
/// s(n) = (x1[n], x1[n-1]) for n = 1..size-1.
std::optional<int> detect_period_x1(std::span<const double> x1, double tol, int max_period);

AttractorClass classify(const StateVec& ic, const MapParams& p, const FilterCoeffs& c,
                        const ClassifyConfig& cfg);

/// Which orbits get an exponent in classify_batch().
enum class HPolicy {
  /// None. Bounded orbits without a period come back as Marginal with no h;
  /// the caller decides their kind.
  None,
  NonPeriodic,
  All,
};

/// classify() over independent lanes through the batched kernels.
std::vector<AttractorClass> classify_batch(const MapParams& p, std::span<const LaneSpec> lanes,
                                           const ClassifyConfig& cfg,
                                           HPolicy policy = HPolicy::NonPeriodic);

/// Hausdorff distance between point sets under the infinity norm.
double hausdorff_inf(std::span<const StateVec> a, std::span<const StateVec> b);

/// Rectangular lattice of initial conditions. IC (i, j) is
/// (x1_axis.at(i), x2_axis.at(j)); flat index i * x2_axis.count + j.
struct IcGrid {
  Axis x1_axis{0.0, 1.0, 10};
  Axis x2_axis{0.0, 1.0, 10};

  std::size_t size() const noexcept { return x1_axis.count * x2_axis.count; }
  StateVec at(std::size_t flat) const {
    return {x1_axis.at(flat / x2_axis.count), x2_axis.at(flat % x2_axis.count)};
  }
};

struct CoexistenceConfig {
  ClassifyConfig classify;
  double cluster_tol = 1e-4;  ///< Hausdorff tolerance for matching cycles
  /// Bounded orbits without a period join a non-periodic cluster when
  /// |h - mean| <= 3 * max(std, h_spread_floor). The cluster is Chaotic or
  /// Marginal by its mean h.
  double h_spread_floor = 1e-3;
  unsigned threads = 0;
};

struct FoundAttractor {
  AttractorClass representative;
  std::size_t first_ic_index = 0;
  StateVec representative_ic;
  std::size_t basin_count = 0;
  double basin_fraction = 0.0;
  double h_mean = 0.0;  ///< over member ICs that carry an exponent
  double h_std = 0.0;
};

struct CoexistenceReport {
  IcGrid grid;
  std::uint64_t seed = 0;
  std::vector<FoundAttractor> attractors;  ///< ordered by first IC index
  std::size_t divergent_count = 0;
  double divergent_fraction = 0.0;
  std::vector<int> labels;  ///< per IC: attractor id, or -1 for divergent
};

CoexistenceReport find_coexisting(const MapParams& p, const FilterCoeffs& c, const IcGrid& grid,
                                  const CoexistenceConfig& cfg);

}  // namespace fhenon
