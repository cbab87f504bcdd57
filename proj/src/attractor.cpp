#include "fhenon/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fhenon/kernels.hpp"
#include "fhenon/parallel.hpp"

namespace fhenon {

std::string_view kind_name(AttractorKind kind) noexcept {
  switch (kind) {
    case AttractorKind::Divergent: return "divergent";
    case AttractorKind::FixedPoint: return "fixed_point";
    case AttractorKind::Periodic: return "periodic";
    case AttractorKind::Chaotic: return "chaotic";
    case AttractorKind::Marginal: return "marginal";
  }
  return "unknown";
}

std::optional<AttractorKind> parse_kind(std::string_view name) noexcept {
  for (auto k : {AttractorKind::Divergent, AttractorKind::FixedPoint, AttractorKind::Periodic,
                 AttractorKind::Chaotic, AttractorKind::Marginal})
    if (kind_name(k) == name) return k;
  return std::nullopt;
}

void ClassifyConfig::validate() const {
  if (transient < 0) throw std::invalid_argument("transient must be non-negative");
  if (max_period < 1) throw std::invalid_argument("max_period must be at least 1");
  if (tail < 2 * static_cast<std::int64_t>(max_period))
    throw std::invalid_argument("tail must hold at least 2 * max_period states");
  if (!(tol > 0)) throw std::invalid_argument("period tolerance must be positive");
  if (!(h_threshold >= 0)) throw std::invalid_argument("h_threshold must be non-negative");
  if (!(guard > 0)) throw std::invalid_argument("divergence guard must be positive");
  lyapunov.validate();
}

std::optional<int> detect_period(std::span<const StateVec> tail, double tol, int max_period) {
  if (max_period < 1 || !(tol > 0)) throw std::invalid_argument("invalid period-detection settings");
  const auto m = static_cast<std::size_t>(max_period);
  if (tail.size() < 2 * m) throw std::invalid_argument("tail shorter than 2 * max_period");
  const std::size_t n_end = tail.size();
  for (std::size_t k = 1; k <= m; ++k) {
    bool ok = true;
    for (std::size_t n = n_end - m; n < n_end && ok; ++n) ok = distance_inf(tail[n], tail[n - k]) < tol;
    if (ok) return static_cast<int>(k);
  }
  return std::nullopt;
}

std::optional<int> detect_period_x1(std::span<const double> x1, double tol, int max_period) {
  if (max_period < 1 || !(tol > 0)) throw std::invalid_argument("invalid period-detection settings");
  const auto m = static_cast<std::size_t>(max_period);
  if (x1.size() < 2 * m + 1) throw std::invalid_argument("series shorter than 2 * max_period + 1");
  const std::size_t last = x1.size() - 1;  // states s(1)..s(last)
  for (std::size_t k = 1; k <= m; ++k) {
    bool ok = true;
    for (std::size_t n = last - m + 1; n <= last && ok; ++n)
      ok = std::abs(x1[n] - x1[n - k]) < tol && std::abs(x1[n - 1] - x1[n - 1 - k]) < tol;
    if (ok) return static_cast<int>(k);
  }
  return std::nullopt;
}

std::vector<AttractorClass> classify_batch(const MapParams& p, std::span<const LaneSpec> lanes,
                                           const ClassifyConfig& cfg, HPolicy policy) {
  cfg.validate();
  const std::size_t n = lanes.size();
  const auto tail = static_cast<std::size_t>(cfg.tail);
  std::vector<double> c0(n), c1(n), x1(n), x2(n), tail_x1(n * tail), start_x1(n);
  std::vector<std::int64_t> escaped(n, -1);
  for (std::size_t l = 0; l < n; ++l) {
    c0[l] = lanes[l].c0;
    c1[l] = lanes[l].c1;
    x1[l] = lanes[l].x1;
    x2[l] = lanes[l].x2;
    if (!within_guard(x1[l], cfg.guard) || !within_guard(x2[l], cfg.guard)) escaped[l] = 0;
  }

  const auto& k = kernels::active_kernels();
  const kernels::LaneBatch batch{c0, c1, x1, x2, escaped};
  k.advance(p, batch, cfg.transient, 0, cfg.guard);
  std::copy(x1.begin(), x1.end(), start_x1.begin());
  k.record(p, batch, cfg.tail, cfg.transient, cfg.guard, tail_x1);

  std::vector<AttractorClass> out(n);
  std::vector<LaneSpec> need_h;
  std::vector<std::size_t> need_h_index;
  std::vector<double> series(tail + 1);

  for (std::size_t l = 0; l < n; ++l) {
    auto& r = out[l];
    r.end_state = StateVec(x1[l], x2[l]);
    if (escaped[l] >= 0) {
      r.kind = AttractorKind::Divergent;
      r.escaped_at = escaped[l];
      continue;
    }
    series[0] = start_x1[l];
    std::copy_n(tail_x1.begin() + static_cast<std::ptrdiff_t>(l * tail), tail, series.begin() + 1);
    if (const auto period = detect_period_x1(series, cfg.tol, cfg.max_period)) {
      r.period = *period;
      r.kind = *period == 1 ? AttractorKind::FixedPoint : AttractorKind::Periodic;
      for (std::size_t i = tail + 1 - static_cast<std::size_t>(*period); i <= tail; ++i)
        r.cycle.emplace_back(series[i], series[i - 1]);
      if (policy != HPolicy::All) continue;
    }
    if (policy == HPolicy::None) {
      r.kind = AttractorKind::Marginal;
      continue;
    }
    need_h.push_back({c0[l], c1[l], x1[l], x2[l]});
    need_h_index.push_back(l);
  }

  if (!need_h.empty()) {
    LyapunovConfig lc = cfg.lyapunov;
    lc.guard = cfg.guard;
    const auto runs = largest_lyapunov_batch(p, need_h, lc);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      auto& r = out[need_h_index[i]];
      if (runs[i].diverged) {
        // Escaped during the exponent run: a long chaotic transient.
        r = AttractorClass{};
        r.kind = AttractorKind::Divergent;
        r.end_state = StateVec(need_h[i].x1, need_h[i].x2);
        continue;
      }
      r.h = runs[i].h;
      if (r.periodic()) continue;
      if (*r.h > cfg.h_threshold) {
        r.kind = AttractorKind::Chaotic;
      } else {
        r.kind = AttractorKind::Marginal;
        r.negative_h = *r.h < -cfg.h_threshold;
      }
    }
  }
  return out;
}

AttractorClass classify(const StateVec& ic, const MapParams& p, const FilterCoeffs& c,
                        const ClassifyConfig& cfg) {
  c.require_two_taps();
  const LaneSpec lane{c[0], c[1], ic.x1(), ic.x2()};
  return classify_batch(p, std::span(&lane, 1), cfg).front();
}

double hausdorff_inf(std::span<const StateVec> a, std::span<const StateVec> b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](std::span<const StateVec> from, std::span<const StateVec> to) {
    double worst = 0.0;
    for (const auto& x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : to) best = std::min(best, distance_inf(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

namespace {

// Lanes per work item for grid classification.
constexpr std::size_t kChunk = 64;

struct Cluster {
  FoundAttractor found;
  double h_sum = 0.0;
  double h_sq = 0.0;
  std::size_t h_count = 0;

  double mean() const { return h_sum / static_cast<double>(h_count); }
  double spread() const {
    const double m = mean();
    return std::sqrt(std::max(0.0, h_sq / static_cast<double>(h_count) - m * m));
  }
  void add_h(double h) {
    h_sum += h;
    h_sq += h * h;
    ++h_count;
  }
};

}  // namespace

CoexistenceReport find_coexisting(const MapParams& p, const FilterCoeffs& c, const IcGrid& grid,
                                  const CoexistenceConfig& cfg) {
  c.require_two_taps();
  grid.x1_axis.validate();
  grid.x2_axis.validate();
  cfg.classify.validate();

  const std::size_t n = grid.size();
  std::vector<AttractorClass> classes(n);
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  parallel_for(chunks, cfg.threads, [&](std::size_t chunk) {
    const std::size_t begin = chunk * kChunk;
    const std::size_t end = std::min(n, begin + kChunk);
    std::vector<LaneSpec> lanes;
    for (std::size_t i = begin; i < end; ++i) {
      const StateVec ic = grid.at(i);
      lanes.push_back({c[0], c[1], ic.x1(), ic.x2()});
    }
    auto res = classify_batch(p, lanes, cfg.classify, HPolicy::All);
    std::move(res.begin(), res.end(), classes.begin() + static_cast<std::ptrdiff_t>(begin));
  });

  CoexistenceReport report;
  report.grid = grid;
  report.seed = cfg.classify.lyapunov.seed;
  report.labels.assign(n, -1);
  std::vector<Cluster> clusters;

  for (std::size_t i = 0; i < n; ++i) {
    const auto& cls = classes[i];
    if (cls.kind == AttractorKind::Divergent) {
      ++report.divergent_count;
      continue;
    }
    int match = -1;
    for (std::size_t j = 0; j < clusters.size() && match < 0; ++j) {
      const auto& rep = clusters[j].found.representative;
      // Chaotic and Marginal orbits are told apart by h alone, which scatters
      // across the threshold for weakly chaotic sets; match them on h.
      if (rep.periodic() != cls.periodic()) continue;
      if (cls.periodic()) {
        if (rep.kind != cls.kind) continue;
        if (rep.period == cls.period && hausdorff_inf(rep.cycle, cls.cycle) < cfg.cluster_tol)
          match = static_cast<int>(j);
      } else {
        const double window = 3.0 * std::max(clusters[j].spread(), cfg.h_spread_floor);
        if (std::abs(*cls.h - clusters[j].mean()) <= window) match = static_cast<int>(j);
      }
    }
    if (match < 0) {
      Cluster fresh;
      fresh.found.representative = cls;
      fresh.found.first_ic_index = i;
      fresh.found.representative_ic = grid.at(i);
      clusters.push_back(std::move(fresh));
      match = static_cast<int>(clusters.size() - 1);
    }
    auto& cl = clusters[static_cast<std::size_t>(match)];
    ++cl.found.basin_count;
    if (cls.h) cl.add_h(*cls.h);
    report.labels[i] = match;
  }

  const auto total = static_cast<double>(n);
  for (auto& cl : clusters) {
    cl.found.basin_fraction = static_cast<double>(cl.found.basin_count) / total;
    if (cl.h_count > 0) {
      cl.found.h_mean = cl.mean();
      cl.found.h_std = cl.spread();
      auto& rep = cl.found.representative;
      if (!rep.periodic()) {
        const double thr = cfg.classify.h_threshold;
        rep.kind = cl.found.h_mean > thr ? AttractorKind::Chaotic : AttractorKind::Marginal;
        rep.negative_h = cl.found.h_mean < -thr;
      }
    } else {
      cl.found.h_mean = std::numeric_limits<double>::quiet_NaN();
      cl.found.h_std = std::numeric_limits<double>::quiet_NaN();
    }
    report.attractors.push_back(std::move(cl.found));
  }
  report.divergent_fraction = static_cast<double>(report.divergent_count) / total;
  return report;
}

}  // namespace fhenon
