#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fhenon/attractor.hpp"

using namespace fhenon;

namespace {

std::vector<StateVec> cycle_series(std::size_t n, int k, double offset = 0.0) {
  std::vector<StateVec> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = offset + static_cast<double>(i % static_cast<std::size_t>(k));
    out.emplace_back(v, v + 10);
  }
  return out;
}

}  // namespace

TEST_SUITE("attractor") {

TEST_CASE("detect_period finds the minimal period") {
  for (int k : {1, 2, 3, 6, 7}) CHECK(detect_period(cycle_series(64, k), 1e-6, 16) == k);
  std::vector<StateVec> ramp;
  for (int i = 0; i < 64; ++i) ramp.emplace_back(i, i);
  CHECK_FALSE(detect_period(ramp, 1e-6, 16).has_value());
  CHECK_THROWS_AS(detect_period(cycle_series(10, 2), 1e-6, 16), std::invalid_argument);
}

TEST_CASE("detect_period_x1 uses the delayed pair") {
  std::vector<double> x;
  for (int i = 0; i < 65; ++i) x.push_back(i % 4 == 0 ? 1.0 : 0.0);
  CHECK(detect_period_x1(x, 1e-6, 16) == 4);
}

TEST_CASE("classify: fixed point, 3-cycle, chaos, divergence") {
  const ClassifyConfig cfg;
  const MapParams mp;

  const auto fp = classify({0.1, 0.1}, mp, {0.5, 0.5}, cfg);
  CHECK(fp.kind == AttractorKind::FixedPoint);
  CHECK(fp.period == 1);
  REQUIRE(fp.cycle.size() == 1);
  CHECK(fp.cycle[0].x1() == doctest::Approx(0.883896).epsilon(1e-5));

  const auto p3 = classify({0.3, 0.3}, mp, {0.5, 0.707}, cfg);
  CHECK(p3.kind == AttractorKind::Periodic);
  CHECK(p3.period == 3);
  REQUIRE(p3.cycle.size() == 3);
  // The cycle closes under the map.
  const auto back = step(step(step(p3.cycle[0], mp, {0.5, 0.707}), mp, {0.5, 0.707}), mp,
                         {0.5, 0.707});
  CHECK(distance_inf(back, p3.cycle[0]) < 1e-6);

  const auto ch = classify({0.1, 0.1}, mp, {1, 0}, cfg);
  CHECK(ch.kind == AttractorKind::Chaotic);
  REQUIRE(ch.h.has_value());
  CHECK(*ch.h > 0.3);

  const auto dv = classify({0.5, 0.5}, mp, {1.5, 1.5}, cfg);
  CHECK(dv.kind == AttractorKind::Divergent);
  CHECK_FALSE(dv.h.has_value());
  CHECK(dv.escaped_at.has_value());
}

TEST_CASE("classification is invariant under tap negation") {
  const ClassifyConfig cfg;
  for (const FilterCoeffs& c : {FilterCoeffs{0.5, 0.707}, FilterCoeffs{1, 0}, FilterCoeffs{0.9, 0.75}}) {
    const auto a = classify({0.2, 0.4}, MapParams{}, c, cfg);
    const auto b = classify({0.2, 0.4}, MapParams{}, c.negated(), cfg);
    CHECK(a.kind == b.kind);
    CHECK(a.period == b.period);
    CHECK(a.end_state == b.end_state);
  }
}

TEST_CASE("classify_batch agrees with classify") {
  const ClassifyConfig cfg;
  std::vector<LaneSpec> lanes{{0.5, 0.5, 0.1, 0.1}, {0.5, 0.707, 0.3, 0.3}, {1, 0, 0.1, 0.1}};
  const auto batch = classify_batch(MapParams{}, lanes, cfg);
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    const auto one = classify({lanes[i].x1, lanes[i].x2}, MapParams{}, {lanes[i].c0, lanes[i].c1}, cfg);
    CHECK(one.kind == batch[i].kind);
    CHECK(one.period == batch[i].period);
    CHECK(one.h == batch[i].h);
  }
  const auto none = classify_batch(MapParams{}, lanes, cfg, HPolicy::None);
  CHECK_FALSE(none[2].h.has_value());
  const auto all = classify_batch(MapParams{}, lanes, cfg, HPolicy::All);
  CHECK(all[1].h.has_value());
}

TEST_CASE("hausdorff distance") {
  std::vector<StateVec> a{{0, 0}, {1, 1}};
  std::vector<StateVec> b{{1, 1}, {0, 0.5}};
  CHECK(hausdorff_inf(a, a) == 0.0);
  CHECK(hausdorff_inf(a, b) == 0.5);
  CHECK(hausdorff_inf(b, a) == 0.5);
}

TEST_CASE("kind names round-trip") {
  for (auto k : {AttractorKind::Divergent, AttractorKind::FixedPoint, AttractorKind::Periodic,
                 AttractorKind::Chaotic, AttractorKind::Marginal})
    CHECK(parse_kind(kind_name(k)) == k);
  CHECK_FALSE(parse_kind("bogus").has_value());
}

TEST_CASE("coexisting attractors") {
  CoexistenceConfig cfg;
  IcGrid grid{{0.0, 0.9, 12}, {0.0, 0.9, 12}};

  SUBCASE("period-3 cycle and an aperiodic attractor at (0.5, 0.707)") {
    const auto r = find_coexisting(MapParams{}, {0.5, 0.707}, grid, cfg);
    REQUIRE(r.attractors.size() == 2);
    double total = r.divergent_fraction;
    int periodic = 0;
    for (const auto& a : r.attractors) {
      total += a.basin_fraction;
      periodic += a.representative.period == 3;
    }
    CHECK(periodic == 1);
    CHECK(total == doctest::Approx(1.0));
    CHECK(r.labels.size() == grid.size());
  }
  SUBCASE("single fixed point") {
    const auto r = find_coexisting(MapParams{}, {0.5, 0.5}, grid, cfg);
    REQUIRE(r.attractors.size() == 1);
    CHECK(r.attractors[0].representative.kind == AttractorKind::FixedPoint);
  }
  SUBCASE("everything escapes") {
    const auto r = find_coexisting(MapParams{}, {1.5, 1.5}, grid, cfg);
    CHECK(r.attractors.empty());
    CHECK(r.divergent_fraction == 1.0);
  }
}

}  // TEST_SUITE
