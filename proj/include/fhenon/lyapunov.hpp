#pragma once

// Lyapunov exponents of the two-tap map by the tangent-map method, and the
// ensemble estimate over random initial conditions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fhenon/map.hpp"

namespace fhenon {

/// Which steps contribute to the time average of ln|growth|.
enum class Accumulation {
  /// All n_total steps, divided by n_total. Reproduces the published
  /// reference values (see README).
  WholeRun,
  /// Steps n_transient..n_total-1, divided by n_total - n_transient.
  AfterTransient,
};

/// Axis-aligned box of initial conditions (x1, x2).
struct IcBox {
  double x1_lo = 0.0, x1_hi = 1.0;
  double x2_lo = 0.0, x2_hi = 1.0;

  static IcBox square(double lo, double hi) { return {lo, hi, lo, hi}; }
  void validate() const;
};

struct LyapunovConfig {
  std::int64_t n_total = 3000;
  std::int64_t n_transient = 500;
  std::size_t n_ics = 25;
  IcBox ic_box;
  std::uint64_t seed = 1;
  std::int64_t renorm_interval = 1;
  Accumulation accumulation = Accumulation::WholeRun;
  double guard = kDefaultGuard;

  void validate() const;
  std::int64_t accumulate_from() const noexcept {
    return accumulation == Accumulation::WholeRun ? 0 : n_transient;
  }
  std::int64_t averaging_steps() const noexcept { return n_total - accumulate_from(); }
};

struct LyapunovRun {
  double h = 0.0;  ///< nats per iteration; NaN when diverged
  bool diverged = false;
};

struct SpectrumRun {
  double h0 = 0.0;
  double h1 = 0.0;  ///< h0 >= h1
  bool diverged = false;
};

struct IcLyapunov {
  StateVec ic;
  double h = 0.0;
  bool diverged = false;
};

struct LyapunovEstimate {
  double h_mean = 0.0;  ///< NaN when n_valid == 0
  double h_std = 0.0;   ///< population standard deviation over valid ICs
  std::vector<IcLyapunov> per_ic;
  std::size_t n_valid = 0;
};

/// Largest exponent from one initial condition. The tangent vector starts at
/// (1, 0).
LyapunovRun largest_lyapunov(const StateVec& ic, const MapParams& p, const FilterCoeffs& c,
                             const LyapunovConfig& cfg);

/// One orbit of a batched evaluation: its own coefficients and start state.
struct LaneSpec {
  double c0 = 0.0;
  double c1 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
};

/// largest_lyapunov() for many independent lanes through the active kernel
/// table. Results are bit-identical to per-lane calls.
std::vector<LyapunovRun> largest_lyapunov_batch(const MapParams& p, std::span<const LaneSpec> lanes,
                                                const LyapunovConfig& cfg);

/// Both exponents from a tangent frame (starting at the identity)
/// re-orthonormalized by Gram-Schmidt. h0 follows the same arithmetic as
/// largest_lyapunov().
SpectrumRun lyapunov_spectrum(const StateVec& ic, const MapParams& p, const FilterCoeffs& c,
                              const LyapunovConfig& cfg);

/// Initial conditions used by lyapunov_ensemble(): IC i is drawn from a
/// generator seeded with derive_seed(cfg.seed, i).
std::vector<StateVec> ensemble_ics(const LyapunovConfig& cfg);

/// Mean and spread of largest_lyapunov() over cfg.n_ics random initial
/// conditions. Divergent runs are excluded from the statistics.
LyapunovEstimate lyapunov_ensemble(const MapParams& p, const FilterCoeffs& c,
                                   const LyapunovConfig& cfg);

/// Statistics over the non-divergent entries of `runs`.
LyapunovEstimate summarize(std::vector<IcLyapunov> runs);

}  // namespace fhenon
