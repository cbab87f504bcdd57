#pragma once

// Filtered Hénon map: the Hénon map with an FIR filter in its quadratic
// feedback path,
//
//   x1(n+1) = alpha - (sum_j c_j x1(n-j))^2 + beta x1(n-1)
//
// For two coefficients this is the 2-D map
//   x1' = alpha - (c0 x1 + c1 x2)^2 + beta x2,   x2' = x1.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace fhenon {

/// Hénon constants. Defaults are the classic chaotic pair.
struct MapParams {
  double alpha = 1.4;
  double beta = 0.3;

  /// Throws std::invalid_argument unless both are finite.
  void validate() const;
};

/// Ordered FIR coefficients c0..c_{N-1}, N >= 1.
class FilterCoeffs {
 public:
  FilterCoeffs(std::initializer_list<double> c);
  explicit FilterCoeffs(std::vector<double> c);

  std::size_t size() const noexcept { return c_.size(); }
  double operator[](std::size_t j) const { return c_[j]; }
  std::span<const double> values() const noexcept { return c_; }

  /// Delay-line length needed to iterate with these taps: max(N, 2).
  std::size_t state_dim() const noexcept { return c_.size() < 2 ? 2 : c_.size(); }

  /// Coefficients with every sign flipped. The map is invariant under this.
  FilterCoeffs negated() const;

  /// Throws std::invalid_argument unless there are exactly two taps.
  void require_two_taps() const;

  bool operator==(const FilterCoeffs&) const = default;

 private:
  std::vector<double> c_;
};

/// Delay line of recent x1 values, newest first: [x1(n), x1(n-1), ...].
/// For two taps this is (x1, x2) with x2(n) = x1(n-1).
class StateVec {
 public:
  StateVec() = default;
  StateVec(double x1, double x2) : v_{x1, x2} {}
  explicit StateVec(std::vector<double> v);

  std::size_t dim() const noexcept { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }
  double x1() const { return v_[0]; }
  double x2() const { return v_[1]; }
  std::span<const double> values() const noexcept { return v_; }

  bool all_finite() const noexcept;

  bool operator==(const StateVec&) const = default;

 private:
  std::vector<double> v_;
};

/// Infinity-norm distance. Dimensions must agree.
double distance_inf(const StateVec& a, const StateVec& b);

struct Mat2 {
  double a11, a12, a21, a22;

  double det() const noexcept { return a11 * a22 - a12 * a21; }
  std::array<double, 2> apply(double v1, double v2) const noexcept {
    return {a11 * v1 + a12 * v2, a21 * v1 + a22 * v2};
  }
};

struct OrbitTrace {
  std::vector<StateVec> states;
  bool diverged = false;
  /// Index of the first state that escaped the guard. The trace holds states
  /// [0, diverged_at).
  std::optional<std::int64_t> diverged_at;
};

inline constexpr double kDefaultGuard = 1e8;

/// One iteration in delay-line form. Works for any number of taps.
StateVec step(const StateVec& s, const MapParams& p, const FilterCoeffs& c);

/// Three-variable form with the filter output x3 carried as a state
/// variable. Two taps only. Used as a cross-check for step().
std::array<double, 3> step_reference_3var(double x1, double x2, double x3,
                                          const MapParams& p, const FilterCoeffs& c);

/// Applies step() n times. Stops at the first state with |x1| > guard or any
/// non-finite component.
OrbitTrace iterate(const StateVec& s0, std::int64_t n, const MapParams& p,
                   const FilterCoeffs& c, double guard = kDefaultGuard);

/// Jacobian of the two-tap map at s:
///   [[-2 c0 u, -2 c1 u + beta], [1, 0]],  u = c0 x1 + c1 x2.
Mat2 jacobian(const StateVec& s, const MapParams& p, const FilterCoeffs& c);

/// True when |x1| is within the guard and finite.
inline bool within_guard(double x1, double guard) noexcept {
  // NaN fails the comparison.
  return (x1 < 0 ? -x1 : x1) <= guard;
}

}  // namespace fhenon
