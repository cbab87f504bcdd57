// NEON kernels: two lanes per float64x2_t (AArch64). Mirrors avx2.cpp.

#include <arm_neon.h>

#include <cmath>

#include "kernels/impl.hpp"
#include "kernels/lane.hpp"

namespace fhenon::kernels::neon {

namespace {

constexpr std::size_t kWidth = 2;
constexpr std::size_t kLogChunk = 64;

struct Consts {
  float64x2_t alpha, beta, guard;
  explicit Consts(const MapParams& p, double g)
      : alpha(vdupq_n_f64(p.alpha)), beta(vdupq_n_f64(p.beta)), guard(vdupq_n_f64(g)) {}
};

inline uint64x2_t bounded_lanes(const std::int64_t* escaped_at) {
  return vcltzq_s64(vld1q_s64(escaped_at));
}

inline int mask_bits(uint64x2_t m) {
  return static_cast<int>((vgetq_lane_u64(m, 0) & 1u) | ((vgetq_lane_u64(m, 1) & 1u) << 1));
}

inline uint64x2_t escape_update(const Consts& k, float64x2_t nx1, uint64x2_t active,
                                std::int64_t* escaped_at, std::int64_t index) {
  const uint64x2_t ok = vcleq_f64(vabsq_f64(nx1), k.guard);
  const uint64x2_t still = vandq_u64(active, ok);
  const int lost = mask_bits(active) & ~mask_bits(still);
  if (lost) {
    for (std::size_t l = 0; l < kWidth; ++l)
      if (lost & (1 << l)) escaped_at[l] = index;
  }
  return still;
}

void advance_group(const Consts& k, const double* c0p, const double* c1p, double* x1p, double* x2p,
                   std::int64_t* escaped_at, std::int64_t steps, std::int64_t step_base,
                   double* x1_out) {
  uint64x2_t active = bounded_lanes(escaped_at);
  if (mask_bits(active) == 0) return;
  const float64x2_t c0 = vld1q_f64(c0p);
  const float64x2_t c1 = vld1q_f64(c1p);
  float64x2_t x1 = vld1q_f64(x1p);
  float64x2_t x2 = vld1q_f64(x2p);

  for (std::int64_t t = 0; t < steps; ++t) {
    const float64x2_t u = vaddq_f64(vmulq_f64(c0, x1), vmulq_f64(c1, x2));
    const float64x2_t nx1 = vaddq_f64(vsubq_f64(k.alpha, vmulq_f64(u, u)), vmulq_f64(k.beta, x2));
    active = escape_update(k, nx1, active, escaped_at, step_base + t + 1);
    x2 = vbslq_f64(active, x1, x2);
    x1 = vbslq_f64(active, nx1, x1);
    const int live = mask_bits(active);
    if (x1_out) {
      if (live & 1) x1_out[t] = vgetq_lane_f64(x1, 0);
      if (live & 2) x1_out[static_cast<std::size_t>(steps) + t] = vgetq_lane_f64(x1, 1);
    }
    if (live == 0) break;
  }
  vst1q_f64(x1p, x1);
  vst1q_f64(x2p, x2);
}

void flush_logs(const double* buf, std::size_t count, double* log_sum) {
  for (std::size_t l = 0; l < kWidth; ++l) {
    double s = log_sum[l];
    for (std::size_t i = 0; i < count; ++i) s += std::log(buf[i * kWidth + l]);
    log_sum[l] = s;
  }
}

void tangent_group(const Consts& k, const double* c0p, const double* c1p, double* x1p, double* x2p,
                   std::int64_t* escaped_at, double* v1p, double* v2p, double* log_sum,
                   const TangentSchedule& s, std::int64_t step_base) {
  uint64x2_t active = bounded_lanes(escaped_at);
  if (mask_bits(active) == 0) return;
  const float64x2_t minus_two = vdupq_n_f64(-2.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t c0 = vld1q_f64(c0p);
  const float64x2_t c1 = vld1q_f64(c1p);
  const float64x2_t j11c = vmulq_f64(minus_two, c0);
  const float64x2_t j12c = vmulq_f64(minus_two, c1);
  float64x2_t x1 = vld1q_f64(x1p);
  float64x2_t x2 = vld1q_f64(x2p);
  float64x2_t v1 = vld1q_f64(v1p);
  float64x2_t v2 = vld1q_f64(v2p);

  double buf[kLogChunk * kWidth];
  std::size_t buffered = 0;

  for (std::int64_t t = 0; t < s.steps; ++t) {
    const float64x2_t u = vaddq_f64(vmulq_f64(c0, x1), vmulq_f64(c1, x2));
    const float64x2_t nv1 = vaddq_f64(vmulq_f64(vmulq_f64(j11c, u), v1),
                                      vmulq_f64(vaddq_f64(vmulq_f64(j12c, u), k.beta), v2));
    const float64x2_t nx1 = vaddq_f64(vsubq_f64(k.alpha, vmulq_f64(u, u)), vmulq_f64(k.beta, x2));
    active = escape_update(k, nx1, active, escaped_at, step_base + t + 1);
    x2 = vbslq_f64(active, x1, x2);
    x1 = vbslq_f64(active, nx1, x1);
    v2 = vbslq_f64(active, v1, v2);
    v1 = vbslq_f64(active, nv1, v1);

    if (detail::renormalizes_at(s, t)) {
      float64x2_t nr = vsqrtq_f64(vaddq_f64(vmulq_f64(v1, v1), vmulq_f64(v2, v2)));
      nr = vbslq_f64(active, nr, one);
      v1 = vdivq_f64(v1, nr);
      v2 = vdivq_f64(v2, nr);
      if (t >= s.accumulate_from) {
        vst1q_f64(buf + buffered * kWidth, nr);
        if (++buffered == kLogChunk) {
          flush_logs(buf, buffered, log_sum);
          buffered = 0;
        }
      }
    }
    if (mask_bits(active) == 0) break;
  }
  flush_logs(buf, buffered, log_sum);
  vst1q_f64(x1p, x1);
  vst1q_f64(x2p, x2);
  vst1q_f64(v1p, v1);
  vst1q_f64(v2p, v2);
}

void advance(const MapParams& p, const LaneBatch& b, std::int64_t steps, std::int64_t step_base,
             double guard) {
  const Consts k(p, guard);
  const std::size_t n = b.size();
  std::size_t l = 0;
  for (; l + kWidth <= n; l += kWidth)
    advance_group(k, &b.c0[l], &b.c1[l], &b.x1[l], &b.x2[l], &b.escaped_at[l], steps, step_base,
                  nullptr);
  for (; l < n; ++l)
    detail::advance_lane(p, b.c0[l], b.c1[l], b.x1[l], b.x2[l], b.escaped_at[l], steps, step_base,
                         guard, nullptr);
}

void record(const MapParams& p, const LaneBatch& b, std::int64_t steps, std::int64_t step_base,
            double guard, std::span<double> x1_out) {
  const Consts k(p, guard);
  const std::size_t n = b.size();
  const auto stride = static_cast<std::size_t>(steps);
  std::size_t l = 0;
  for (; l + kWidth <= n; l += kWidth)
    advance_group(k, &b.c0[l], &b.c1[l], &b.x1[l], &b.x2[l], &b.escaped_at[l], steps, step_base,
                  x1_out.data() + l * stride);
  for (; l < n; ++l)
    detail::advance_lane(p, b.c0[l], b.c1[l], b.x1[l], b.x2[l], b.escaped_at[l], steps, step_base,
                         guard, x1_out.data() + l * stride);
}

void tangent(const MapParams& p, const LaneBatch& b, const TangentBatch& tb,
             const TangentSchedule& s, std::int64_t step_base, double guard) {
  const Consts k(p, guard);
  const std::size_t n = b.size();
  std::size_t l = 0;
  for (; l + kWidth <= n; l += kWidth)
    tangent_group(k, &b.c0[l], &b.c1[l], &b.x1[l], &b.x2[l], &b.escaped_at[l], &tb.v1[l],
                  &tb.v2[l], &tb.log_sum[l], s, step_base);
  for (; l < n; ++l)
    detail::tangent_lane(p, b.c0[l], b.c1[l], b.x1[l], b.x2[l], b.escaped_at[l], tb.v1[l],
                         tb.v2[l], tb.log_sum[l], s, step_base, guard);
}

}  // namespace

const KernelTable kTable{Isa::Neon, kWidth, &advance, &record, &tangent};

}  // namespace fhenon::kernels::neon
