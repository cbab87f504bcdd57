#pragma once

// Serialization of every analysis result. CSV and JSON are the normative
// outputs; images are for looking at.

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fhenon/attractor.hpp"
#include "fhenon/fixed_points.hpp"
#include "fhenon/lyapunov.hpp"
#include "fhenon/map.hpp"
#include "fhenon/sweep.hpp"

namespace fhenon::io {

/// Thrown for file-system failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal text that parses back to the same double. Non-finite
/// values print as nan, inf, -inf.
std::string format_real(double v);

/// Inverse of format_real(). Throws std::invalid_argument on malformed text.
double parse_real(std::string_view text);

// CSV. Every file starts with a header row.

/// n,x1,x2 (state stored newest first: x2 is x1 delayed by one step).
void write_orbit_csv(std::ostream& os, const OrbitTrace& trace);
/// branch,p,lambda_max,stability
void write_fixed_points_csv(std::ostream& os, const std::vector<FixedPoint>& pts);
/// c0,c1,stable
void write_stability_csv(std::ostream& os, const StabilityGrid& grid);
/// c0,c1,h_mean,h_std,n_valid (one data row)
void write_lyapunov_csv(std::ostream& os, double c0, double c1, const LyapunovEstimate& est);
/// c_value,x1_value,class,h; class is the kind name, "periodic:k" for a
/// k-cycle. One row per recorded value, one row with an
/// empty x1_value for a divergent point.
void write_diagram_csv(std::ostream& os, const BifurcationDiagram& diag);
/// c0,c1,h_mean,h_std,class,period,n_valid; period empty when not periodic.
void write_grid_csv(std::ostream& os, const SweepGrid& grid);
/// ic1,ic2,attractor_id (-1 = divergent)
void write_basin_csv(std::ostream& os, const CoexistenceReport& report);

nlohmann::json to_json(const FixedPoint& fp);
nlohmann::json to_json(const LyapunovEstimate& est);
nlohmann::json to_json(const AttractorClass& cls);
nlohmann::json to_json(const CoexistenceReport& report);

// Raster images.

struct Rgb {
  std::uint8_t r = 255, g = 255, b = 255;
  bool operator==(const Rgb&) const = default;
};

class Image {
 public:
  Image(std::size_t width, std::size_t height, Rgb fill = {});
  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  void set(std::size_t x, std::size_t y, Rgb c);
  Rgb get(std::size_t x, std::size_t y) const { return px_[y * width_ + x]; }
  void line(double x0, double y0, double x1, double y1, Rgb c);

 private:
  std::size_t width_, height_;
  std::vector<Rgb> px_;
};

void write_png(const std::filesystem::path& path, const Image& img);
/// 1-bit grayscale PNG; `on` pixels are black.
void write_png_1bit(const std::filesystem::path& path, std::size_t width, std::size_t height,
                    const std::vector<unsigned char>& on);

struct HeatScale {
  double h_min = 0.0;
  double h_max = 0.0;
};

/// Colour for h: blues below zero, yellow to red above, white for NaN.
/// Values beyond the scale saturate.
Rgb heat_color(double h, const HeatScale& scale);
/// Distinct colour per period; white for 0 (no period).
Rgb period_color(int period);

/// c0 runs left to right, c1 bottom to top. The heat scale spans the 1st
/// to 99th percentile of each sign and is reported through scale_out.
Image render_lyapunov_map(const SweepGrid& grid, HeatScale& scale_out);
Image render_period_map(const SweepGrid& grid);
/// x1 against n.
Image render_series(const OrbitTrace& trace, std::size_t width = 800, std::size_t height = 400);
Image render_diagram(const BifurcationDiagram& diag, std::size_t width = 1000,
                     std::size_t height = 600);
/// Indexed colours by attractor id, white for divergent.
Image render_basins(const CoexistenceReport& report);

/// Writes text atomically enough for our purposes: to a temporary name, then
/// renamed. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace fhenon::io
