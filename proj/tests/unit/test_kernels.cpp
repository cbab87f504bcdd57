#include <doctest.h>

#include <cstring>
#include <vector>

#include "fhenon/kernels.hpp"
#include "fhenon/lyapunov.hpp"
#include "fhenon/rng.hpp"
#include "fhenon/sweep.hpp"

using namespace fhenon;
using namespace fhenon::kernels;

namespace {

struct Lanes {
  std::vector<double> c0, c1, x1, x2;
  std::vector<std::int64_t> esc;

  explicit Lanes(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
      // Wide enough that a good share of lanes escape mid-run.
      c0.push_back(rng.uniform(-1.6, 1.6));
      c1.push_back(rng.uniform(-1.6, 1.6));
      x1.push_back(rng.uniform(-1, 1));
      x2.push_back(rng.uniform(-1, 1));
      esc.push_back(-1);
    }
  }
  LaneBatch batch() { return {c0, c1, x1, x2, esc}; }
};

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

const MapParams kP{};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar is always available and listed first") {
  const auto isas = available_isas();
  REQUIRE(!isas.empty());
  CHECK(isas.front() == Isa::Scalar);
  CHECK(kernels_for(Isa::Scalar)->width == 1);
}

TEST_CASE("every ISA advances lanes bit-identically to scalar") {
  const auto& ref = *kernels_for(Isa::Scalar);
  for (Isa isa : available_isas()) {
    CAPTURE(isa_name(isa));
    const auto& k = *kernels_for(isa);
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 64u}) {
      Lanes a(n, 100 + n), b(n, 100 + n);
      ref.advance(kP, a.batch(), 700, 5, kDefaultGuard);
      k.advance(kP, b.batch(), 700, 5, kDefaultGuard);
      CHECK(same_bits(a.x1, b.x1));
      CHECK(same_bits(a.x2, b.x2));
      CHECK(a.esc == b.esc);
    }
  }
}

TEST_CASE("every ISA records x1 bit-identically to scalar") {
  const auto& ref = *kernels_for(Isa::Scalar);
  for (Isa isa : available_isas()) {
    CAPTURE(isa_name(isa));
    const auto& k = *kernels_for(isa);
    const std::size_t n = 11, steps = 300;
    Lanes a(n, 7), b(n, 7);
    std::vector<double> ra(n * steps, -7.0), rb(n * steps, -7.0);
    ref.record(kP, a.batch(), steps, 0, kDefaultGuard, ra);
    k.record(kP, b.batch(), steps, 0, kDefaultGuard, rb);
    CHECK(same_bits(ra, rb));
    CHECK(a.esc == b.esc);
  }
}

TEST_CASE("every ISA runs the tangent kernel bit-identically to scalar") {
  const auto& ref = *kernels_for(Isa::Scalar);
  for (Isa isa : available_isas()) {
    CAPTURE(isa_name(isa));
    const auto& k = *kernels_for(isa);
    for (const TangentSchedule sched : {TangentSchedule{1000, 0, 1}, TangentSchedule{1000, 250, 1},
                                        TangentSchedule{999, 100, 7}, TangentSchedule{130, 0, 64}}) {
      const std::size_t n = 19;
      Lanes a(n, 55), b(n, 55);
      std::vector<double> av1(n, 1.0), av2(n, 0.0), al(n, 0.0);
      std::vector<double> bv1(n, 1.0), bv2(n, 0.0), bl(n, 0.0);
      ref.tangent(kP, a.batch(), {av1, av2, al}, sched, 0, kDefaultGuard);
      k.tangent(kP, b.batch(), {bv1, bv2, bl}, sched, 0, kDefaultGuard);
      CHECK(same_bits(al, bl));
      CHECK(same_bits(av1, bv1));
      CHECK(same_bits(a.x1, b.x1));
      CHECK(a.esc == b.esc);
    }
  }
}

TEST_CASE("escaped lanes stay frozen at their last bounded state") {
  for (Isa isa : available_isas()) {
    CAPTURE(isa_name(isa));
    const auto& k = *kernels_for(isa);
    std::vector<double> c0{1.5, 0.5}, c1{1.5, 0.5}, x1{0.0, 0.1}, x2{0.0, 0.1};
    std::vector<std::int64_t> esc{-1, -1};
    k.advance(kP, {c0, c1, x1, x2, esc}, 200, 0, kDefaultGuard);
    REQUIRE(esc[0] > 0);
    CHECK(esc[1] == -1);
    CHECK(std::abs(x1[0]) <= kDefaultGuard);
    const double frozen = x1[0];
    k.advance(kP, {c0, c1, x1, x2, esc}, 50, 200, kDefaultGuard);
    CHECK(x1[0] == frozen);
  }
}

TEST_CASE("library results do not depend on the active ISA") {
  const auto before = active_kernels().isa;
  SweepConfig cfg;
  cfg.threads = 1;
  const Axis ax{-1.2, 1.2, 9};
  std::vector<std::vector<double>> hs;
  for (Isa isa : available_isas()) {
    REQUIRE(set_active_isa(isa));
    const auto grid = lyapunov_map_2d(kP, ax, ax, cfg);
    std::vector<double> h;
    for (const auto& c : grid.cells) h.push_back(c.h_mean);
    hs.push_back(h);
  }
  set_active_isa(before);
  for (const auto& h : hs) CHECK(same_bits(h, hs.front()));
}

TEST_CASE("set_active_isa refuses unavailable ISAs") {
  const auto before = active_kernels().isa;
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (!kernels_for(isa)) CHECK_FALSE(set_active_isa(isa));
  CHECK(active_kernels().isa == before);
}

}  // TEST_SUITE
