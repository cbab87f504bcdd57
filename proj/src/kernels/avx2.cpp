// AVX2 kernels: four lanes per __m256d. Built with -mavx2 only (no FMA) so
// every operation rounds exactly like the scalar reference.

#include <immintrin.h>

#include <array>
#include <cmath>

#include "kernels/impl.hpp"
#include "kernels/lane.hpp"

namespace fhenon::kernels::avx2 {

namespace {

constexpr std::size_t kWidth = 4;
// Renormalization factors buffered before their logs are summed in scalar
// order.
constexpr std::size_t kLogChunk = 64;

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline __m256d bounded_lanes(const std::int64_t* escaped_at) {
  const __m256i e = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(escaped_at));
  return _mm256_castsi256_pd(_mm256_cmpgt_epi64(_mm256_setzero_si256(), e));
}

struct Consts {
  __m256d alpha, beta, guard;
  explicit Consts(const MapParams& p, double g)
      : alpha(_mm256_set1_pd(p.alpha)), beta(_mm256_set1_pd(p.beta)), guard(_mm256_set1_pd(g)) {}
};

/// Applies the escape test to nx1, marks lanes that just left, and returns
/// the surviving mask.
inline __m256d escape_update(const Consts& k, __m256d nx1, __m256d active, std::int64_t* escaped_at,
                             std::int64_t index) {
  const __m256d ok = _mm256_cmp_pd(abs_pd(nx1), k.guard, _CMP_LE_OQ);
  const __m256d still = _mm256_and_pd(active, ok);
  const int lost = _mm256_movemask_pd(active) & ~_mm256_movemask_pd(still);
  if (lost) {
    for (std::size_t l = 0; l < kWidth; ++l)
      if (lost & (1 << l)) escaped_at[l] = index;
  }
  return still;
}

void advance_group(const Consts& k, const double* c0p, const double* c1p, double* x1p, double* x2p,
                   std::int64_t* escaped_at, std::int64_t steps, std::int64_t step_base,
                   double* x1_out) {
  __m256d active = bounded_lanes(escaped_at);
  if (_mm256_movemask_pd(active) == 0) return;
  const __m256d c0 = _mm256_loadu_pd(c0p);
  const __m256d c1 = _mm256_loadu_pd(c1p);
  __m256d x1 = _mm256_loadu_pd(x1p);
  __m256d x2 = _mm256_loadu_pd(x2p);
  alignas(32) double lane_x1[kWidth];

  for (std::int64_t t = 0; t < steps; ++t) {
    const __m256d u = _mm256_add_pd(_mm256_mul_pd(c0, x1), _mm256_mul_pd(c1, x2));
    const __m256d nx1 =
        _mm256_add_pd(_mm256_sub_pd(k.alpha, _mm256_mul_pd(u, u)), _mm256_mul_pd(k.beta, x2));
    active = escape_update(k, nx1, active, escaped_at, step_base + t + 1);
    x2 = _mm256_blendv_pd(x2, x1, active);
    x1 = _mm256_blendv_pd(x1, nx1, active);
    const int live = _mm256_movemask_pd(active);
    if (x1_out) {
      _mm256_store_pd(lane_x1, x1);
      for (std::size_t l = 0; l < kWidth; ++l)
        if (live & (1 << l)) x1_out[l * static_cast<std::size_t>(steps) + t] = lane_x1[l];
    }
    if (live == 0) break;
  }
  _mm256_storeu_pd(x1p, x1);
  _mm256_storeu_pd(x2p, x2);
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
  __m256d active = bounded_lanes(escaped_at);
  if (_mm256_movemask_pd(active) == 0) return;
  const __m256d minus_two = _mm256_set1_pd(-2.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d c0 = _mm256_loadu_pd(c0p);
  const __m256d c1 = _mm256_loadu_pd(c1p);
  const __m256d j11c = _mm256_mul_pd(minus_two, c0);
  const __m256d j12c = _mm256_mul_pd(minus_two, c1);
  __m256d x1 = _mm256_loadu_pd(x1p);
  __m256d x2 = _mm256_loadu_pd(x2p);
  __m256d v1 = _mm256_loadu_pd(v1p);
  __m256d v2 = _mm256_loadu_pd(v2p);

  alignas(32) double buf[kLogChunk * kWidth];
  std::size_t buffered = 0;

  for (std::int64_t t = 0; t < s.steps; ++t) {
    const __m256d u = _mm256_add_pd(_mm256_mul_pd(c0, x1), _mm256_mul_pd(c1, x2));
    const __m256d nv1 =
        _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(j11c, u), v1),
                      _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(j12c, u), k.beta), v2));
    const __m256d nx1 =
        _mm256_add_pd(_mm256_sub_pd(k.alpha, _mm256_mul_pd(u, u)), _mm256_mul_pd(k.beta, x2));
    active = escape_update(k, nx1, active, escaped_at, step_base + t + 1);
    x2 = _mm256_blendv_pd(x2, x1, active);
    x1 = _mm256_blendv_pd(x1, nx1, active);
    v2 = _mm256_blendv_pd(v2, v1, active);
    v1 = _mm256_blendv_pd(v1, nv1, active);

    if (detail::renormalizes_at(s, t)) {
      __m256d nr = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(v1, v1), _mm256_mul_pd(v2, v2)));
      // Frozen lanes divide by one and log zero.
      nr = _mm256_blendv_pd(one, nr, active);
      v1 = _mm256_div_pd(v1, nr);
      v2 = _mm256_div_pd(v2, nr);
      if (t >= s.accumulate_from) {
        _mm256_store_pd(buf + buffered * kWidth, nr);
        if (++buffered == kLogChunk) {
          flush_logs(buf, buffered, log_sum);
          buffered = 0;
        }
      }
    }
    if (_mm256_movemask_pd(active) == 0) break;
  }
  flush_logs(buf, buffered, log_sum);
  _mm256_storeu_pd(x1p, x1);
  _mm256_storeu_pd(x2p, x2);
  _mm256_storeu_pd(v1p, v1);
  _mm256_storeu_pd(v2p, v2);
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

const KernelTable kTable{Isa::Avx2, kWidth, &advance, &record, &tangent};

}  // namespace fhenon::kernels::avx2
