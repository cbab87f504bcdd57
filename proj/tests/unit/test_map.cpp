#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fhenon/map.hpp"
#include "fhenon/rng.hpp"

using namespace fhenon;

TEST_SUITE("map") {

TEST_CASE("two-tap step matches the closed form") {
  const MapParams p{};
  const FilterCoeffs c{0.5, 0.25};
  const StateVec s{0.3, -0.2};
  const auto n = step(s, p, c);
  const double u = 0.5 * 0.3 + 0.25 * -0.2;
  CHECK(n.x1() == p.alpha - u * u + p.beta * -0.2);
  CHECK(n.x2() == 0.3);
}

TEST_CASE("c = (1, 0) is the classic Henon map") {
  const MapParams p{};
  const auto n = step({0.1, 0.2}, p, {1.0, 0.0});
  CHECK(n.x1() == doctest::Approx(1.4 - 0.01 + 0.3 * 0.2));
}

TEST_CASE("three-variable form agrees with step") {
  const MapParams p{};
  const FilterCoeffs c{0.7, -0.4};
  double x1 = 0.2, x2 = 0.1, x3 = 0.7 * 0.2 - 0.4 * 0.1;
  StateVec s{x1, x2};
  for (int i = 0; i < 200; ++i) {
    const auto r = step_reference_3var(x1, x2, x3, p, c);
    s = step(s, p, c);
    x1 = r[0], x2 = r[1], x3 = r[2];
    REQUIRE(s.x1() == x1);
    REQUIRE(s.x2() == x2);
  }
}

TEST_CASE("negating every tap leaves the orbit unchanged bit for bit") {
  SplitMix64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const FilterCoeffs c{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const StateVec s0(std::vector<double>{rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1)});
    const auto a = iterate(s0, 300, MapParams{}, c);
    const auto b = iterate(s0, 300, MapParams{}, c.negated());
    CHECK(a.states == b.states);
  }
}

TEST_CASE("general delay line: one and three taps") {
  const MapParams p{};
  // One tap: x1' = alpha - (c0 x1)^2 + beta x1(n-1).
  const auto a = step({0.5, 0.2}, p, {0.8});
  CHECK(a.x1() == doctest::Approx(1.4 - 0.16 + 0.06));
  CHECK(a.x2() == 0.5);

  const FilterCoeffs c3{0.5, 0.3, 0.2};
  CHECK(c3.state_dim() == 3);
  const StateVec s(std::vector<double>{0.1, 0.2, 0.3});
  const auto b = step(s, p, c3);
  const double u = 0.05 + 0.06 + 0.06;
  CHECK(b.dim() == 3);
  CHECK(b[0] == doctest::Approx(1.4 - u * u + 0.3 * 0.2));
  CHECK(b[1] == 0.1);
  CHECK(b[2] == 0.2);
}

TEST_CASE("iterate: zero steps returns the initial state only") {
  const auto t = iterate({0.1, 0.1}, 0, MapParams{}, {0.5, 0.5});
  CHECK(t.states.size() == 1);
  CHECK_FALSE(t.diverged);
}

TEST_CASE("iterate: fixed-point example converges") {
  const auto t = iterate({0.1, 0.1}, 2000, MapParams{}, {0.5, 0.5});
  CHECK(t.states.back().x1() == doctest::Approx(0.883896).epsilon(1e-6));
}

TEST_CASE("iterate: divergence is flagged and the trace stops before the escape") {
  const auto t = iterate({0.0, 0.0}, 1000, MapParams{}, {1.5, 1.5});
  REQUIRE(t.diverged);
  REQUIRE(t.diverged_at.has_value());
  CHECK(static_cast<std::int64_t>(t.states.size()) == *t.diverged_at);
  for (const auto& s : t.states) CHECK(std::abs(s.x1()) <= kDefaultGuard);
}

TEST_CASE("Jacobian matches finite differences") {
  const MapParams p{};
  const FilterCoeffs c{0.6, -0.9};
  const StateVec s{0.4, 0.7};
  const auto J = jacobian(s, p, c);
  const double h = 1e-6;
  const auto f1 = step({0.4 + h, 0.7}, p, c), f0 = step({0.4 - h, 0.7}, p, c);
  const auto g1 = step({0.4, 0.7 + h}, p, c), g0 = step({0.4, 0.7 - h}, p, c);
  CHECK(J.a11 == doctest::Approx((f1.x1() - f0.x1()) / (2 * h)).epsilon(1e-6));
  CHECK(J.a12 == doctest::Approx((g1.x1() - g0.x1()) / (2 * h)).epsilon(1e-6));
  CHECK(J.a21 == 1.0);
  CHECK(J.a22 == 0.0);
  CHECK(J.det() == doctest::Approx(-(p.beta - 2 * c[1] * (0.6 * 0.4 - 0.9 * 0.7))));
}

TEST_CASE("invalid input is rejected") {
  CHECK_THROWS_AS(FilterCoeffs(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(FilterCoeffs({NAN, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(iterate({0, 0}, -1, MapParams{}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(iterate({0, 0}, 1, MapParams{}, {1, 0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((MapParams{INFINITY, 0.3}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(jacobian({0, 0}, MapParams{}, {1, 0, 0}), std::invalid_argument);
  CHECK_THROWS(step({0.1, 0.2}, MapParams{}, {0.1, 0.2, 0.3}));
}

}  // TEST_SUITE
