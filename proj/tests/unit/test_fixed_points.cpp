#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fhenon/fixed_points.hpp"

using namespace fhenon;

TEST_SUITE("fixed_points") {

TEST_CASE("values at (0.5, 0.5)") {
  const auto pts = fixed_points(MapParams{}, {0.5, 0.5});
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].branch == FixedPointBranch::P1);
  CHECK(pts[1].branch == FixedPointBranch::P2);
  CHECK(pts[1].p == doctest::Approx(0.883896).epsilon(1e-6));
  CHECK(pts[1].lambda_max == doctest::Approx(0.764131).epsilon(1e-6));
  CHECK(pts[1].stable());
  CHECK(pts[0].p < 0);
  CHECK(pts[0].stability == Stability::Unstable);
}

TEST_CASE("fixed points satisfy p = alpha - (s p)^2 + beta p") {
  const MapParams mp{};
  for (const auto& c : {FilterCoeffs{1, 0}, FilterCoeffs{0.3, 0.9}, FilterCoeffs{-1.2, 0.1},
                        FilterCoeffs{1e-9, 0}}) {
    const double s = c[0] + c[1];
    for (const auto& fp : fixed_points(mp, c))
      CHECK(fp.p == doctest::Approx(mp.alpha - s * s * fp.p * fp.p + mp.beta * fp.p).epsilon(1e-12));
  }
}

TEST_CASE("c0 + c1 = 0 gives the single point alpha / (1 - beta)") {
  const auto pts = fixed_points(MapParams{}, {0.8, -0.8});
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].branch == FixedPointBranch::Degenerate);
  CHECK(pts[0].p == doctest::Approx(2.0));
  CHECK(pts[0].lambda_max == doctest::Approx(std::sqrt(0.3)));
  CHECK(p2_of(MapParams{}, {0.8, -0.8})->branch == FixedPointBranch::Degenerate);
}

TEST_CASE("no real fixed point") {
  const MapParams mp{-5.0, 0.3};
  CHECK(fixed_points(mp, {1, 0}).empty());
  CHECK_FALSE(p2_of(mp, {1, 0}).has_value());
}

TEST_CASE("eigenvalues: complex pair modulus is sqrt(-B)") {
  const MapParams mp{};
  const FilterCoeffs c{0.5, 0.5};
  const double p = p2_of(mp, c)->p;
  const auto ev = stability_eigenvalues(p, mp, c);
  const double s = 1.0;
  const double A = -2 * 0.5 * p * s, B = -2 * 0.5 * p * s + 0.3;
  for (const auto& l : ev) CHECK(std::abs(l * l - A * l - B) < 1e-12);
  if (A * A + 4 * B < 0)
    CHECK(stability_eigenvalue(p, mp, c) == doctest::Approx(std::sqrt(-B)));
}

TEST_CASE("stability classification bands") {
  CHECK(stability_of(0.5) == Stability::Stable);
  CHECK(stability_of(1.5) == Stability::Unstable);
  CHECK(stability_of(1.0) == Stability::Marginal);
  CHECK(stability_of(1.0 + 1e-10) == Stability::Marginal);
}

TEST_CASE("stability region is symmetric under negation of both taps") {
  const Axis ax{-1.5, 1.5, 41};
  const auto g = stability_region(MapParams{}, ax, ax);
  CHECK(g.stable_count() > 0);
  for (std::size_t i = 0; i < ax.count; ++i)
    for (std::size_t j = 0; j < ax.count; ++j)
      CHECK(g.at(i, j) == g.at(ax.count - 1 - i, ax.count - 1 - j));
  // Unbounded along c0 + c1 = 0: the degenerate point is stable there.
  for (std::size_t i = 0; i < ax.count; ++i) CHECK(g.at(i, ax.count - 1 - i));
}

TEST_CASE("P1 is unstable wherever it exists") {
  const Axis ax{-1.5, 1.5, 60};
  const auto r = p1_unstable_scan(MapParams{}, ax, ax);
  CHECK(r.all_unstable);
  CHECK(r.degenerate_cells == 60);
  CHECK(r.cells_checked == 60 * 60 - 60);
  CHECK(r.min_lambda > 1.0);
}

}  // TEST_SUITE
