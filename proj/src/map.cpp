#include "fhenon/map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fhenon {

void MapParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw std::invalid_argument("map parameters must be finite");
}

FilterCoeffs::FilterCoeffs(std::initializer_list<double> c) : FilterCoeffs(std::vector<double>(c)) {}

FilterCoeffs::FilterCoeffs(std::vector<double> c) : c_(std::move(c)) {
  if (c_.empty()) throw std::invalid_argument("filter needs at least one coefficient");
  for (double v : c_)
    if (!std::isfinite(v)) throw std::invalid_argument("filter coefficients must be finite");
}

FilterCoeffs FilterCoeffs::negated() const {
  std::vector<double> n(c_.size());
  std::transform(c_.begin(), c_.end(), n.begin(), [](double v) { return -v; });
  return FilterCoeffs(std::move(n));
}

void FilterCoeffs::require_two_taps() const {
  if (c_.size() != 2)
    throw std::invalid_argument("analysis requires exactly two filter coefficients, got " +
                                std::to_string(c_.size()));
}

StateVec::StateVec(std::vector<double> v) : v_(std::move(v)) {
  if (v_.size() < 2) throw std::invalid_argument("state dimension must be at least 2");
}

bool StateVec::all_finite() const noexcept {
  return std::all_of(v_.begin(), v_.end(), [](double v) { return std::isfinite(v); });
}

double distance_inf(const StateVec& a, const StateVec& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("state dimensions differ");
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

StateVec step(const StateVec& s, const MapParams& p, const FilterCoeffs& c) {
  const std::size_t dim = c.state_dim();
  if (s.dim() != dim)
    throw std::invalid_argument("state dimension " + std::to_string(s.dim()) +
                                " does not match filter (expected " + std::to_string(dim) + ")");
  // Summed left to right so the two-tap case is c0*x1 + c1*x2, matching the
  // batched kernels bit for bit.
  double u = c[0] * s[0];
  for (std::size_t j = 1; j < c.size(); ++j) u = u + c[j] * s[j];

  std::vector<double> next(dim);
  next[0] = p.alpha - u * u + p.beta * s[1];
  std::copy_n(s.values().begin(), dim - 1, next.begin() + 1);
  return StateVec(std::move(next));
}

std::array<double, 3> step_reference_3var(double x1, double x2, double x3, const MapParams& p,
                                          const FilterCoeffs& c) {
  c.require_two_taps();
  const double x1_next = p.alpha - x3 * x3 + p.beta * x2;
  const double x3_next = c[0] * x1_next + c[1] * x1;
  return {x1_next, x1, x3_next};
}

OrbitTrace iterate(const StateVec& s0, std::int64_t n, const MapParams& p, const FilterCoeffs& c,
                   double guard) {
  if (n < 0) throw std::invalid_argument("step count must be non-negative");
  if (!(guard > 0)) throw std::invalid_argument("divergence guard must be positive");

  OrbitTrace trace;
  trace.states.reserve(static_cast<std::size_t>(n) + 1);
  trace.states.push_back(s0);
  StateVec s = s0;
  for (std::int64_t i = 1; i <= n; ++i) {
    s = step(s, p, c);
    if (!within_guard(s.x1(), guard) || !s.all_finite()) {
      trace.diverged = true;
      trace.diverged_at = i;
      break;
    }
    trace.states.push_back(s);
  }
  return trace;
}

Mat2 jacobian(const StateVec& s, const MapParams& p, const FilterCoeffs& c) {
  c.require_two_taps();
  const double u = c[0] * s.x1() + c[1] * s.x2();
  return {-2.0 * c[0] * u, -2.0 * c[1] * u + p.beta, 1.0, 0.0};
}

}  // namespace fhenon
