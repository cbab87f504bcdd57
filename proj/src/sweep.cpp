#include "fhenon/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fhenon/kernels.hpp"
#include "fhenon/parallel.hpp"
#include "fhenon/rng.hpp"

namespace fhenon {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

StateVec draw_ic(const IcBox& box, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double x1 = rng.uniform(box.x1_lo, box.x1_hi);
  const double x2 = rng.uniform(box.x2_lo, box.x2_hi);
  return {x1, x2};
}

/// Iterates one orbit `steps` times collecting x1. Returns false if it escapes.
bool record_x1(const MapParams& p, double c0, double c1, StateVec& s, std::size_t steps,
               double guard, std::vector<double>& out) {
  double x1 = s.x1(), x2 = s.x2();
  std::int64_t escaped = -1;
  out.assign(steps, 0.0);
  const kernels::LaneBatch lane{std::span(&c0, 1), std::span(&c1, 1), std::span(&x1, 1),
                                std::span(&x2, 1), std::span(&escaped, 1)};
  kernels::active_kernels().record(p, lane, static_cast<std::int64_t>(steps), 0, guard, out);
  s = StateVec(x1, x2);
  return escaped < 0;
}

}  // namespace

BifurcationDiagram bifurcation_1d(const MapParams& p, SweepAxis axis, double fixed_value,
                                  const Axis& sweep, const BifurcationConfig& cfg) {
  sweep.validate();
  cfg.classify.validate();
  cfg.restart_box.validate();

  BifurcationDiagram diag;
  diag.axis = axis;
  diag.fixed_value = fixed_value;
  diag.continuation = cfg.continuation;
  diag.direction = cfg.direction;
  diag.samples.resize(sweep.count);

  const HPolicy policy = cfg.h_for_periodic ? HPolicy::All : HPolicy::NonPeriodic;
  std::optional<StateVec> carry;

  for (std::size_t pos = 0; pos < sweep.count; ++pos) {
    const std::size_t i = cfg.direction == SweepDirection::Forward ? pos : sweep.count - 1 - pos;
    auto& sample = diag.samples[i];
    sample.c = sweep.at(i);
    const double c0 = axis == SweepAxis::C1 ? fixed_value : sample.c;
    const double c1 = axis == SweepAxis::C1 ? sample.c : fixed_value;

    if (cfg.continuation && carry) {
      sample.ic = *carry;
    } else {
      sample.ic = draw_ic(cfg.restart_box, derive_seed(cfg.seed, i));
      sample.restarted = true;
    }
    carry.reset();

    const LaneSpec lane{c0, c1, sample.ic.x1(), sample.ic.x2()};
    auto cls = classify_batch(p, std::span(&lane, 1), cfg.classify, policy).front();
    sample.kind = cls.kind;
    sample.period = cls.period;
    sample.h = cls.h;

    if (cls.kind == AttractorKind::Divergent) continue;
    if (cls.periodic()) {
      for (const auto& s : cls.cycle) sample.x1.push_back(s.x1());
      carry = cls.end_state;
      continue;
    }
    StateVec s = cls.end_state;
    if (!record_x1(p, c0, c1, s, cfg.record, cfg.classify.guard, sample.x1)) {
      sample.x1.clear();
      sample.kind = AttractorKind::Divergent;
      sample.h.reset();
      continue;
    }
    carry = s;
  }
  return diag;
}

std::uint64_t cell_seed(std::uint64_t grid_seed, std::size_t i0, std::size_t i1) noexcept {
  return derive_seed(derive_seed(grid_seed, i0), i1);
}

std::vector<CellResult> evaluate_lyapunov_cells(const MapParams& p, std::span<const CellSpec> cells,
                                                const SweepConfig& cfg) {
  cfg.classify.validate();
  cfg.lyapunov.validate();
  const std::size_t per_cell = cfg.lyapunov.n_ics;

  std::vector<LaneSpec> lanes;
  std::vector<StateVec> ics;
  lanes.reserve(cells.size() * per_cell);
  for (const auto& cell : cells) {
    LyapunovConfig lc = cfg.lyapunov;
    lc.seed = cell.seed;
    for (const auto& ic : ensemble_ics(lc)) {
      lanes.push_back({cell.c0, cell.c1, ic.x1(), ic.x2()});
      ics.push_back(ic);
    }
  }
  const auto runs = largest_lyapunov_batch(p, lanes, cfg.lyapunov);

  std::vector<CellResult> out(cells.size());
  std::vector<LaneSpec> probe;
  std::vector<std::size_t> probe_cell;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<IcLyapunov> per_ic;
    per_ic.reserve(per_cell);
    std::optional<std::size_t> first_bounded;
    for (std::size_t k = 0; k < per_cell; ++k) {
      const std::size_t l = c * per_cell + k;
      per_ic.push_back({ics[l], runs[l].h, runs[l].diverged});
      if (!runs[l].diverged && !first_bounded) first_bounded = l;
    }
    const auto est = summarize(std::move(per_ic));
    auto& r = out[c];
    r.c0 = cells[c].c0;
    r.c1 = cells[c].c1;
    r.h_mean = est.h_mean;
    r.h_std = est.h_std;
    r.n_valid = est.n_valid;
    if (first_bounded) {
      probe.push_back(lanes[*first_bounded]);
      probe_cell.push_back(c);
    }
  }

  const auto classes = classify_batch(p, probe, cfg.classify, HPolicy::None);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto& r = out[probe_cell[i]];
    if (classes[i].periodic()) {
      r.kind = classes[i].kind;
      r.period = classes[i].period;
    } else {
      r.kind = r.h_mean > cfg.classify.h_threshold ? AttractorKind::Chaotic : AttractorKind::Marginal;
    }
  }
  return out;
}

std::vector<CellResult> evaluate_period_cells(const MapParams& p, std::span<const CellSpec> cells,
                                              const SweepConfig& cfg) {
  cfg.lyapunov.validate();
  std::vector<LaneSpec> lanes;
  lanes.reserve(cells.size());
  for (const auto& cell : cells) {
    const StateVec ic = draw_ic(cfg.lyapunov.ic_box, derive_seed(cell.seed, 0));
    lanes.push_back({cell.c0, cell.c1, ic.x1(), ic.x2()});
  }
  const auto classes = classify_batch(p, lanes, cfg.classify, HPolicy::All);

  std::vector<CellResult> out(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto& r = out[c];
    const auto& cls = classes[c];
    r.c0 = cells[c].c0;
    r.c1 = cells[c].c1;
    r.kind = cls.kind;
    r.period = cls.period;
    r.h_mean = cls.h.value_or(kNaN);
    r.h_std = cls.h ? 0.0 : kNaN;
    r.n_valid = cls.kind == AttractorKind::Divergent ? 0 : 1;
  }
  return out;
}

namespace {

using CellEvaluator = std::vector<CellResult> (*)(const MapParams&, std::span<const CellSpec>,
                                                  const SweepConfig&);

SweepGrid sweep_grid(const MapParams& p, const Axis& c0_axis, const Axis& c1_axis,
                     const SweepConfig& cfg, CellEvaluator evaluate) {
  c0_axis.validate();
  c1_axis.validate();
  SweepGrid grid;
  grid.c0_axis = c0_axis;
  grid.c1_axis = c1_axis;
  grid.seed = cfg.seed;
  grid.cells.resize(c0_axis.count * c1_axis.count);

  // One row of constant c0 per work item.
  parallel_for(c0_axis.count, cfg.threads, [&](std::size_t i0) {
    std::vector<CellSpec> row(c1_axis.count);
    for (std::size_t i1 = 0; i1 < c1_axis.count; ++i1)
      row[i1] = {c0_axis.at(i0), c1_axis.at(i1), cell_seed(cfg.seed, i0, i1)};
    const auto res = evaluate(p, row, cfg);
    std::copy(res.begin(), res.end(),
              grid.cells.begin() + static_cast<std::ptrdiff_t>(i0 * c1_axis.count));
  });
  return grid;
}

}  // namespace

SweepGrid lyapunov_map_2d(const MapParams& p, const Axis& c0_axis, const Axis& c1_axis,
                          const SweepConfig& cfg) {
  return sweep_grid(p, c0_axis, c1_axis, cfg, &evaluate_lyapunov_cells);
}

SweepGrid period_map_2d(const MapParams& p, const Axis& c0_axis, const Axis& c1_axis,
                        const SweepConfig& cfg) {
  return sweep_grid(p, c0_axis, c1_axis, cfg, &evaluate_period_cells);
}

}  // namespace fhenon
