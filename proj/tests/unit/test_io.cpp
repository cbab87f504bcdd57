#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "fhenon/io.hpp"
#include "fhenon/rng.hpp"

using namespace fhenon;

namespace {

std::filesystem::path scratch(const char* name) {
  auto d = std::filesystem::temp_directory_path() / "fhenon_unit_io";
  std::filesystem::create_directories(d);
  return d / name;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_SUITE("io") {

TEST_CASE("format_real round-trips") {
  SplitMix64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng() % 200) - 100);
    CHECK(io::parse_real(io::format_real(v)) == v);
  }
  CHECK(io::format_real(0.1) == "0.1");
  CHECK(io::format_real(NAN) == "nan");
  CHECK(io::format_real(-INFINITY) == "-inf");
  CHECK(std::isnan(io::parse_real("nan")));
  CHECK(io::parse_real(" +2.5 ") == 2.5);
  CHECK(io::parse_real(io::format_real(std::numeric_limits<double>::denorm_min())) ==
        std::numeric_limits<double>::denorm_min());
}

TEST_CASE("parse_real rejects junk") {
  for (const char* bad : {"", "1.0x", "abc", "1,5", "--1"})
    CHECK_THROWS_AS(io::parse_real(bad), std::invalid_argument);
}

TEST_CASE("CSV headers and rows") {
  std::ostringstream os;
  io::write_orbit_csv(os, iterate({0.1, 0.1}, 0, MapParams{}, {1, 0}));
  CHECK(os.str() == "n,x1,x2\n0,0.1,0.1\n");

  os.str("");
  io::write_fixed_points_csv(os, fixed_points(MapParams{}, {0.5, 0.5}));
  CHECK(first_line(os.str()) == "branch,p,lambda_max,stability");

  os.str("");
  LyapunovEstimate est;
  est.h_mean = -0.5;
  est.n_valid = 3;
  io::write_lyapunov_csv(os, 0.5, 0.707, est);
  CHECK(os.str() == "c0,c1,h_mean,h_std,n_valid\n0.5,0.707,-0.5,0,3\n");

  os.str("");
  BifurcationDiagram d;
  d.samples.push_back({0.7, {1.0, 2.0, 3.0}, AttractorKind::Periodic, 3, -0.2, {0, 0}, false});
  d.samples.push_back({0.8, {}, AttractorKind::Divergent, 0, std::nullopt, {0, 0}, true});
  io::write_diagram_csv(os, d);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "c_value,x1_value,class,h");
  std::getline(in, line);
  CHECK(line.find(",periodic:3,") != std::string::npos);
  std::getline(in, line);
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.rfind("0.8,,", 0) == 0);

  os.str("");
  SweepGrid g;
  g.c0_axis = {0, 1, 1};
  g.c1_axis = {0, 1, 1};
  CellResult c;
  c.c0 = 0.5;
  c.c1 = 0.25;
  c.h_mean = NAN;
  g.cells.push_back(c);
  io::write_grid_csv(os, g);
  CHECK(os.str() == "c0,c1,h_mean,h_std,class,period,n_valid\n0.5,0.25,nan,0,divergent,,0\n");
}

TEST_CASE("JSON forms") {
  const auto j = io::to_json(fixed_points(MapParams{}, {0.5, 0.5})[1]);
  CHECK(j["branch"] == "P2");
  CHECK(j["stability"] == "stable");
  AttractorClass cls;
  cls.kind = AttractorKind::Periodic;
  cls.period = 3;
  CHECK(io::to_json(cls)["period"] == 3);
}

TEST_CASE("PNG output") {
  const auto p = scratch("img.png");
  io::Image img(4, 3);
  img.set(1, 1, {255, 0, 0});
  io::write_png(p, img);
  std::ifstream f(p, std::ios::binary);
  char sig[8];
  f.read(sig, 8);
  CHECK(std::string(sig, 8) == "\x89PNG\r\n\x1a\n");
  CHECK_FALSE(std::filesystem::exists(std::filesystem::path(p).concat(".part")));

  const auto q = scratch("bits.png");
  io::write_png_1bit(q, 3, 2, {1, 0, 0, 1, 1, 0});
  CHECK(std::filesystem::file_size(q) > 8);
}

TEST_CASE("colour maps") {
  const io::HeatScale s{-2.0, 1.0};
  CHECK(io::heat_color(NAN, s) == io::Rgb{});
  CHECK(io::heat_color(-5.0, s) == io::heat_color(-2.0, s));
  CHECK(io::heat_color(5.0, s) == io::heat_color(1.0, s));
  CHECK_FALSE(io::heat_color(-1.0, s) == io::heat_color(0.5, s));
  CHECK(io::period_color(0) == io::Rgb{});
  CHECK(io::period_color(1) == io::Rgb{0, 0, 0});
  CHECK_FALSE(io::period_color(2) == io::period_color(3));
}

TEST_CASE("text files are written in one piece") {
  const auto p = scratch("out.txt");
  io::write_text_file(p, "hello\n");
  std::ifstream f(p);
  std::string s;
  std::getline(f, s);
  CHECK(s == "hello");
  CHECK_THROWS_AS(io::write_text_file(scratch("missing") / "x" / "y.txt", "z"), io::IoError);
}

}  // TEST_SUITE
