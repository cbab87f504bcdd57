#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

#include "fhenon/io.hpp"

namespace fhenon::io {

Image::Image(std::size_t width, std::size_t height, Rgb fill)
    : width_(width), height_(height), px_(width * height, fill) {}

void Image::set(std::size_t x, std::size_t y, Rgb c) {
  if (x < width_ && y < height_) px_[y * width_ + x] = c;
}

void Image::line(double x0, double y0, double x1, double y1, Rgb c) {
  const double len = std::max(std::abs(x1 - x0), std::abs(y1 - y0));
  const auto n = static_cast<std::size_t>(std::ceil(len)) + 1;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = n == 0 ? 0.0 : static_cast<double>(i) / static_cast<double>(n);
    const double x = std::round(x0 + t * (x1 - x0));
    const double y = std::round(y0 + t * (y1 - y0));
    if (x >= 0 && y >= 0) set(static_cast<std::size_t>(x), static_cast<std::size_t>(y), c);
  }
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

void write_png_rows(const std::filesystem::path& path, std::size_t width, std::size_t height,
                    int bit_depth, int color_type,
                    const std::vector<std::vector<unsigned char>>& rows) {
  auto tmp = path;
  tmp += ".part";
  std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(tmp.c_str(), "wb"));
  if (!fp) throw IoError("cannot open " + tmp.string() + " for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fp.reset();
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw IoError("failed writing PNG " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (const auto& row : rows) png_write_row(png, row.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  fp.reset();

  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move output into place: " + path.string());
}

Rgb lerp(Rgb a, Rgb b, double t) {
  t = std::clamp(t, 0.0, 1.0);
  auto mix = [t](std::uint8_t u, std::uint8_t v) {
    return static_cast<std::uint8_t>(std::lround(u + t * (static_cast<double>(v) - u)));
  };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

// Cell (i0, i1) -> pixel (i0, height - 1 - i1).
template <typename ColorFn>
Image render_grid(const SweepGrid& grid, ColorFn color) {
  const std::size_t w = grid.c0_axis.count, h = grid.c1_axis.count;
  Image img(w, h);
  for (std::size_t i0 = 0; i0 < w; ++i0)
    for (std::size_t i1 = 0; i1 < h; ++i1) img.set(i0, h - 1 - i1, color(grid.at(i0, i1)));
  return img;
}

}  // namespace

void write_png(const std::filesystem::path& path, const Image& img) {
  std::vector<std::vector<unsigned char>> rows(img.height());
  for (std::size_t y = 0; y < img.height(); ++y) {
    auto& row = rows[y];
    row.reserve(img.width() * 3);
    for (std::size_t x = 0; x < img.width(); ++x) {
      const Rgb c = img.get(x, y);
      row.insert(row.end(), {c.r, c.g, c.b});
    }
  }
  write_png_rows(path, img.width(), img.height(), 8, PNG_COLOR_TYPE_RGB, rows);
}

void write_png_1bit(const std::filesystem::path& path, std::size_t width, std::size_t height,
                    const std::vector<unsigned char>& on) {
  std::vector<std::vector<unsigned char>> rows(height, std::vector<unsigned char>((width + 7) / 8, 0));
  for (std::size_t y = 0; y < height; ++y)
    for (std::size_t x = 0; x < width; ++x)
      // Gray 1 = white; stable cells are drawn black.
      if (!on[y * width + x]) rows[y][x / 8] |= static_cast<unsigned char>(0x80u >> (x % 8));
  write_png_rows(path, width, height, 1, PNG_COLOR_TYPE_GRAY, rows);
}

Rgb heat_color(double h, const HeatScale& scale) {
  if (!std::isfinite(h)) return {255, 255, 255};
  if (h < 0) {
    const double t = scale.h_min < 0 ? h / scale.h_min : 1.0;
    return lerp({190, 215, 255}, {10, 20, 120}, t);
  }
  const double t = scale.h_max > 0 ? h / scale.h_max : 0.0;
  return t < 0.5 ? lerp({255, 250, 120}, {255, 150, 0}, 2 * t)
                 : lerp({255, 150, 0}, {170, 0, 0}, 2 * t - 1);
}

Rgb period_color(int period) {
  if (period <= 0) return {255, 255, 255};
  if (period == 1) return {0, 0, 0};
  // Hues spaced by the golden angle.
  const double hue = std::fmod(static_cast<double>(period) * 0.618033988749895, 1.0) * 6.0;
  const double f = hue - std::floor(hue);
  const double s = 0.85, v = 0.9;
  const double p = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
  double r = v, g = t, b = p;
  switch (static_cast<int>(hue) % 6) {
    case 0: r = v, g = t, b = p; break;
    case 1: r = q, g = v, b = p; break;
    case 2: r = p, g = v, b = t; break;
    case 3: r = p, g = q, b = v; break;
    case 4: r = t, g = p, b = v; break;
    default: r = v, g = p, b = q; break;
  }
  auto u8 = [](double x) { return static_cast<std::uint8_t>(std::lround(255 * x)); };
  return {u8(r), u8(g), u8(b)};
}

Image render_lyapunov_map(const SweepGrid& grid, HeatScale& scale_out) {
  // Percentile bounds: a handful of strongly contracting cells would
  // otherwise wash out the blues.
  std::vector<double> neg, pos;
  for (const auto& c : grid.cells) {
    if (!std::isfinite(c.h_mean)) continue;
    (c.h_mean < 0 ? neg : pos).push_back(c.h_mean);
  }
  HeatScale s{0.0, 0.0};
  if (!neg.empty()) {
    auto k = neg.begin() + static_cast<std::ptrdiff_t>(neg.size() / 100);
    std::nth_element(neg.begin(), k, neg.end());
    s.h_min = *k;
  }
  if (!pos.empty()) {
    auto k = pos.begin() + static_cast<std::ptrdiff_t>(pos.size() - 1 - pos.size() / 100);
    std::nth_element(pos.begin(), k, pos.end());
    s.h_max = *k;
  }
  scale_out = s;
  return render_grid(grid, [&](const CellResult& c) { return heat_color(c.h_mean, s); });
}

Image render_period_map(const SweepGrid& grid) {
  return render_grid(grid, [](const CellResult& c) { return period_color(c.period); });
}

Image render_series(const OrbitTrace& trace, std::size_t width, std::size_t height) {
  Image img(width, height);
  const auto& st = trace.states;
  if (st.empty()) return img;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : st) {
    lo = std::min(lo, s.x1());
    hi = std::max(hi, s.x1());
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double margin = 10;
  auto px = [&](std::size_t n) {
    const double denom = st.size() > 1 ? static_cast<double>(st.size() - 1) : 1.0;
    return margin + (static_cast<double>(width) - 2 * margin) * static_cast<double>(n) / denom;
  };
  auto py = [&](double x) {
    return margin + (static_cast<double>(height) - 2 * margin) * (hi - x) / (hi - lo);
  };
  const Rgb axis{160, 160, 160}, ink{20, 60, 160};
  img.line(margin, py(lo), static_cast<double>(width) - margin, py(lo), axis);
  img.line(margin, py(lo), margin, py(hi), axis);
  for (std::size_t n = 1; n < st.size(); ++n)
    img.line(px(n - 1), py(st[n - 1].x1()), px(n), py(st[n].x1()), ink);
  for (std::size_t n = 0; n < st.size(); ++n) img.set(static_cast<std::size_t>(px(n)), static_cast<std::size_t>(py(st[n].x1())), {200, 0, 0});
  return img;
}

Image render_diagram(const BifurcationDiagram& diag, std::size_t width, std::size_t height) {
  Image img(width, height);
  if (diag.samples.empty()) return img;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : diag.samples)
    for (double x : s.x1) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  if (!(hi > lo)) {
    lo = -1;
    hi = 1;
  }
  const double c_lo = diag.samples.front().c, c_hi = diag.samples.back().c;
  const double c_span = c_hi > c_lo ? c_hi - c_lo : 1.0;
  for (const auto& s : diag.samples) {
    const auto x = static_cast<std::size_t>(std::lround((s.c - c_lo) / c_span * static_cast<double>(width - 1)));
    for (double v : s.x1) {
      const auto y = static_cast<std::size_t>(std::lround((hi - v) / (hi - lo) * static_cast<double>(height - 1)));
      img.set(x, y, {0, 0, 0});
    }
  }
  return img;
}

Image render_basins(const CoexistenceReport& report) {
  const std::size_t w = report.grid.x1_axis.count, h = report.grid.x2_axis.count;
  Image img(w, h);
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      const int id = report.labels[i * h + j];
      img.set(i, h - 1 - j, id < 0 ? Rgb{255, 255, 255} : period_color(id + 2));
    }
  return img;
}

}  // namespace fhenon::io
