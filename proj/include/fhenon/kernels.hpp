#pragma once

// Batched two-tap kernels. A batch is a set of independent orbits ("lanes"),
// each with its own coefficients and state, advanced in lockstep. The scalar
// kernels are the reference; SIMD variants must reproduce them bit for bit on
// every lane, so the variant picked at runtime never changes results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fhenon/map.hpp"

namespace fhenon::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

/// Structure-of-arrays view over `size()` lanes. All spans have equal length.
/// escaped_at[l] is -1 while lane l is bounded, otherwise the index of the
/// first state that left the guard. An escaped lane is frozen at its last
/// bounded state and skipped by every kernel.
struct LaneBatch {
  std::span<const double> c0;
  std::span<const double> c1;
  std::span<double> x1;
  std::span<double> x2;
  std::span<std::int64_t> escaped_at;

  std::size_t size() const noexcept { return x1.size(); }
  void validate() const;
};

/// Tangent vectors and log-growth accumulators, one per lane.
struct TangentBatch {
  std::span<double> v1;
  std::span<double> v2;
  std::span<double> log_sum;
};

struct TangentSchedule {
  std::int64_t steps = 0;
  /// ln|v| is summed only for renormalizations at step index >= this.
  std::int64_t accumulate_from = 0;
  /// Renormalize every this many steps (and at accumulate_from and the end).
  std::int64_t renorm_interval = 1;
};

/// Advances every bounded lane `steps` times. `step_base` is the state index
/// of the current lane states, used to fill escaped_at.
using AdvanceFn = void (*)(const MapParams&, const LaneBatch&, std::int64_t steps,
                           std::int64_t step_base, double guard);

/// Like advance, additionally storing x1 after every step into
/// x1_out[lane * steps + t]. Entries after a lane escapes are left untouched.
using RecordFn = void (*)(const MapParams&, const LaneBatch&, std::int64_t steps,
                          std::int64_t step_base, double guard, std::span<double> x1_out);

/// Advances orbit and tangent vector together (tangent first, by the
/// Jacobian at the pre-step state), accumulating ln of the renormalization
/// factors into log_sum.
using TangentFn = void (*)(const MapParams&, const LaneBatch&, const TangentBatch&,
                           const TangentSchedule&, std::int64_t step_base, double guard);

struct KernelTable {
  Isa isa;
  std::size_t width;  ///< native lane count
  AdvanceFn advance;
  RecordFn record;
  TangentFn tangent;
};

/// Kernel table for the given ISA, or nullptr if it is not compiled in or not
/// supported by this CPU.
const KernelTable* kernels_for(Isa isa) noexcept;

/// All usable ISAs, scalar first.
std::vector<Isa> available_isas();

/// The table used by the library. Chosen once: the widest supported ISA,
/// unless the FHENON_SIMD environment variable names one (scalar, avx2,
/// neon). Can be overridden for testing with set_active_isa().
const KernelTable& active_kernels() noexcept;

/// Forces the active table. Returns false (and changes nothing) if the ISA
/// is unavailable.
bool set_active_isa(Isa isa) noexcept;

}  // namespace fhenon::kernels
