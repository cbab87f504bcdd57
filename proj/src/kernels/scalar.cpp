#include "kernels/impl.hpp"
#include "kernels/lane.hpp"

namespace fhenon::kernels::scalar {

namespace {

void advance(const MapParams& p, const LaneBatch& b, std::int64_t steps, std::int64_t step_base,
             double guard) {
  for (std::size_t l = 0; l < b.size(); ++l)
    detail::advance_lane(p, b.c0[l], b.c1[l], b.x1[l], b.x2[l], b.escaped_at[l], steps, step_base,
                         guard, nullptr);
}

void record(const MapParams& p, const LaneBatch& b, std::int64_t steps, std::int64_t step_base,
            double guard, std::span<double> x1_out) {
  for (std::size_t l = 0; l < b.size(); ++l)
    detail::advance_lane(p, b.c0[l], b.c1[l], b.x1[l], b.x2[l], b.escaped_at[l], steps, step_base,
                         guard, x1_out.data() + l * static_cast<std::size_t>(steps));
}

void tangent(const MapParams& p, const LaneBatch& b, const TangentBatch& tb,
             const TangentSchedule& s, std::int64_t step_base, double guard) {
  for (std::size_t l = 0; l < b.size(); ++l)
    detail::tangent_lane(p, b.c0[l], b.c1[l], b.x1[l], b.x2[l], b.escaped_at[l], tb.v1[l],
                         tb.v2[l], tb.log_sum[l], s, step_base, guard);
}

}  // namespace

const KernelTable kTable{Isa::Scalar, 1, &advance, &record, &tangent};

}  // namespace fhenon::kernels::scalar
