#include "fhenon/lyapunov.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "fhenon/kernels.hpp"
#include "fhenon/rng.hpp"

namespace fhenon {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

void IcBox::validate() const {
  if (!(x1_lo < x1_hi) || !(x2_lo < x2_hi))
    throw std::invalid_argument("initial-condition box must be non-degenerate");
}

void LyapunovConfig::validate() const {
  if (n_total < 1) throw std::invalid_argument("n_total must be positive");
  if (n_transient < 0 || n_transient >= n_total)
    throw std::invalid_argument("n_transient must lie in [0, n_total)");
  if (n_ics < 1) throw std::invalid_argument("n_ics must be at least 1");
  if (renorm_interval < 1) throw std::invalid_argument("renorm_interval must be at least 1");
  if (!(guard > 0)) throw std::invalid_argument("divergence guard must be positive");
  ic_box.validate();
}

std::vector<LyapunovRun> largest_lyapunov_batch(const MapParams& p, std::span<const LaneSpec> lanes,
                                                const LyapunovConfig& cfg) {
  cfg.validate();
  const std::size_t n = lanes.size();
  std::vector<double> c0(n), c1(n), x1(n), x2(n), v1(n, 1.0), v2(n, 0.0), logs(n, 0.0);
  std::vector<std::int64_t> escaped(n, -1);
  for (std::size_t l = 0; l < n; ++l) {
    c0[l] = lanes[l].c0;
    c1[l] = lanes[l].c1;
    x1[l] = lanes[l].x1;
    x2[l] = lanes[l].x2;
    if (!std::isfinite(x1[l]) || !std::isfinite(x2[l]) || !within_guard(x1[l], cfg.guard) ||
        !within_guard(x2[l], cfg.guard))
      escaped[l] = 0;
  }

  const kernels::LaneBatch batch{c0, c1, x1, x2, escaped};
  const kernels::TangentBatch tangent{v1, v2, logs};
  const kernels::TangentSchedule sched{cfg.n_total, cfg.accumulate_from(), cfg.renorm_interval};
  kernels::active_kernels().tangent(p, batch, tangent, sched, 0, cfg.guard);

  const auto denom = static_cast<double>(cfg.averaging_steps());
  std::vector<LyapunovRun> out(n);
  for (std::size_t l = 0; l < n; ++l) {
    if (escaped[l] >= 0)
      out[l] = {kNaN, true};
    else
      out[l] = {logs[l] / denom, false};
  }
  return out;
}

LyapunovRun largest_lyapunov(const StateVec& ic, const MapParams& p, const FilterCoeffs& c,
                             const LyapunovConfig& cfg) {
  c.require_two_taps();
  const LaneSpec lane{c[0], c[1], ic.x1(), ic.x2()};
  return largest_lyapunov_batch(p, std::span(&lane, 1), cfg).front();
}

SpectrumRun lyapunov_spectrum(const StateVec& ic, const MapParams& p, const FilterCoeffs& c,
                              const LyapunovConfig& cfg) {
  c.require_two_taps();
  cfg.validate();
  const double c0 = c[0], c1 = c[1];
  const double j11c = -2.0 * c0;
  const double j12c = -2.0 * c1;
  double x1 = ic.x1(), x2 = ic.x2();
  // Frame columns q = (a1, a2) and r = (b1, b2).
  double a1 = 1.0, a2 = 0.0, b1 = 0.0, b2 = 1.0;
  double s0 = 0.0, s1 = 0.0;
  const kernels::TangentSchedule sched{cfg.n_total, cfg.accumulate_from(), cfg.renorm_interval};

  if (!within_guard(x1, cfg.guard) || !within_guard(x2, cfg.guard)) return {kNaN, kNaN, true};

  for (std::int64_t t = 0; t < cfg.n_total; ++t) {
    const double u = c0 * x1 + c1 * x2;
    const double j11 = j11c * u;
    const double j12 = j12c * u + p.beta;
    const double na1 = j11 * a1 + j12 * a2;
    const double nb1 = j11 * b1 + j12 * b2;
    const double nx1 = p.alpha - u * u + p.beta * x2;
    if (!within_guard(nx1, cfg.guard)) return {kNaN, kNaN, true};
    x2 = x1;
    x1 = nx1;
    a2 = a1;
    a1 = na1;
    b2 = b1;
    b1 = nb1;

    const std::int64_t n = t + 1;
    if (n % sched.renorm_interval == 0 || n == sched.steps || n == sched.accumulate_from) {
      const double r11 = std::sqrt(a1 * a1 + a2 * a2);
      a1 = a1 / r11;
      a2 = a2 / r11;
      const double proj = a1 * b1 + a2 * b2;
      b1 -= proj * a1;
      b2 -= proj * a2;
      const double r22 = std::sqrt(b1 * b1 + b2 * b2);
      b1 /= r22;
      b2 /= r22;
      if (t >= sched.accumulate_from) {
        s0 += std::log(r11);
        s1 += std::log(r22);
      }
    }
  }
  const auto denom = static_cast<double>(cfg.averaging_steps());
  SpectrumRun r{s0 / denom, s1 / denom, false};
  if (r.h1 > r.h0) std::swap(r.h0, r.h1);
  return r;
}

std::vector<StateVec> ensemble_ics(const LyapunovConfig& cfg) {
  cfg.validate();
  std::vector<StateVec> ics;
  ics.reserve(cfg.n_ics);
  for (std::size_t i = 0; i < cfg.n_ics; ++i) {
    SplitMix64 rng(derive_seed(cfg.seed, i));
    const double x1 = rng.uniform(cfg.ic_box.x1_lo, cfg.ic_box.x1_hi);
    const double x2 = rng.uniform(cfg.ic_box.x2_lo, cfg.ic_box.x2_hi);
    ics.emplace_back(x1, x2);
  }
  return ics;
}

LyapunovEstimate summarize(std::vector<IcLyapunov> runs) {
  LyapunovEstimate est;
  est.per_ic = std::move(runs);
  double sum = 0.0;
  for (const auto& r : est.per_ic) {
    if (r.diverged) continue;
    sum += r.h;
    ++est.n_valid;
  }
  if (est.n_valid == 0) {
    est.h_mean = kNaN;
    est.h_std = kNaN;
    return est;
  }
  est.h_mean = sum / static_cast<double>(est.n_valid);
  double ss = 0.0;
  for (const auto& r : est.per_ic)
    if (!r.diverged) ss += (r.h - est.h_mean) * (r.h - est.h_mean);
  est.h_std = std::sqrt(ss / static_cast<double>(est.n_valid));
  return est;
}

LyapunovEstimate lyapunov_ensemble(const MapParams& p, const FilterCoeffs& c,
                                   const LyapunovConfig& cfg) {
  c.require_two_taps();
  const auto ics = ensemble_ics(cfg);
  std::vector<LaneSpec> lanes;
  lanes.reserve(ics.size());
  for (const auto& ic : ics) lanes.push_back({c[0], c[1], ic.x1(), ic.x2()});
  const auto runs = largest_lyapunov_batch(p, lanes, cfg);

  std::vector<IcLyapunov> per_ic;
  per_ic.reserve(ics.size());
  for (std::size_t i = 0; i < ics.size(); ++i) per_ic.push_back({ics[i], runs[i].h, runs[i].diverged});
  return summarize(std::move(per_ic));
}

}  // namespace fhenon
