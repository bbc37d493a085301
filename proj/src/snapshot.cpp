#include "floater/snapshot.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace floater {

Image::Image(int w, int h, Rgb fill) : width(w), height(h) {
  rgb.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
  for (std::size_t i = 0; i < rgb.size(); i += 3) {
    rgb[i] = fill[0];
    rgb[i + 1] = fill[1];
    rgb[i + 2] = fill[2];
  }
}

Rgb Image::pixel(int x, int y) const {
  const auto i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)) * 3;
  return {rgb[i], rgb[i + 1], rgb[i + 2]};
}

void Image::set_pixel(int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  const auto i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)) * 3;
  rgb[i] = c[0];
  rgb[i + 1] = c[1];
  rgb[i + 2] = c[2];
}

std::size_t Image::count(Rgb c) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < rgb.size(); i += 3) {
    if (rgb[i] == c[0] && rgb[i + 1] == c[1] && rgb[i + 2] == c[2]) ++n;
  }
  return n;
}

WorldWindow WorldWindow::centred(const Vec2& centre, double half_extent) {
  return {centre.x() - half_extent, centre.y() - half_extent, centre.x() + half_extent,
          centre.y() + half_extent};
}

namespace {

struct Raster {
  const WorldWindow& window;
  double ppu;

  [[nodiscard]] Vec2 world_of(int px, int py) const {
    return {window.x_min + (px + 0.5) / ppu, window.y_max - (py + 0.5) / ppu};
  }
  [[nodiscard]] Vec2 pixel_of(const Vec2& w) const {
    return {(w.x() - window.x_min) * ppu - 0.5, (window.y_max - w.y()) * ppu - 0.5};
  }
};

void draw_line(Image& img, Vec2 a, Vec2 b, Rgb c) {
  int x0 = static_cast<int>(std::lround(a.x()));
  int y0 = static_cast<int>(std::lround(a.y()));
  const int x1 = static_cast<int>(std::lround(b.x()));
  const int y1 = static_cast<int>(std::lround(b.y()));
  // Segments far outside the image are skipped rather than walked.
  const int lim = 4 * std::max(img.width, img.height);
  if (std::abs(x0) > lim || std::abs(y0) > lim || std::abs(x1) > lim || std::abs(y1) > lim) {
    return;
  }
  const int dx = std::abs(x1 - x0);
  const int sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0);
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    img.set_pixel(x0, y0, c);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

Rgb colour_of(CellState s) {
  switch (s) {
    case CellState::Excited:
      return palette::kExcited;
    case CellState::Refractory:
      return palette::kRefractory;
    case CellState::Resting:
      break;
  }
  return palette::kResting;
}

}  // namespace

Image render_snapshot(const Lattice& lattice, const Pose& pose, const LightSource& light,
                      std::span<const Vec2> trajectory, const WorldWindow& window,
                      double pixels_per_unit) {
  if (!(std::isfinite(pixels_per_unit) && pixels_per_unit > 0.0)) {
    throw std::invalid_argument("pixels_per_unit must be positive");
  }
  const double ww = window.x_max - window.x_min;
  const double wh = window.y_max - window.y_min;
  if (!(ww > 0.0 && wh > 0.0)) throw std::invalid_argument("window must have positive area");

  const int width = std::max(1, static_cast<int>(std::lround(ww * pixels_per_unit)));
  const int height = std::max(1, static_cast<int>(std::lround(wh * pixels_per_unit)));
  Image img(width, height, palette::kBackground);
  const Raster raster{window, pixels_per_unit};

  // Lattice: sample the cell under each pixel centre inside its bounding box.
  if (lattice.size() > 0) {
    const double half_diag =
        0.5 * std::hypot(static_cast<double>(lattice.width()), static_cast<double>(lattice.height()));
    const Vec2 lo = raster.pixel_of(pose.position + Vec2(-half_diag, half_diag));
    const Vec2 hi = raster.pixel_of(pose.position + Vec2(half_diag, -half_diag));
    const int px0 = std::max(0, static_cast<int>(std::floor(lo.x())));
    const int py0 = std::max(0, static_cast<int>(std::floor(lo.y())));
    const int px1 = std::min(width - 1, static_cast<int>(std::ceil(hi.x())));
    const int py1 = std::min(height - 1, static_cast<int>(std::ceil(hi.y())));
    const auto to_body = rotation(-pose.heading);
    const double cx = (lattice.width() - 1) / 2.0;
    const double cy = (lattice.height() - 1) / 2.0;
    for (int py = py0; py <= py1; ++py) {
      for (int px = px0; px <= px1; ++px) {
        const Vec2 body = to_body * (raster.world_of(px, py) - pose.position);
        const int x = static_cast<int>(std::floor(body.x() + cx + 0.5));
        const int y = static_cast<int>(std::floor(body.y() + cy + 0.5));
        if (lattice.contains(x, y)) img.set_pixel(px, py, colour_of(lattice(x, y)));
      }
    }
  }

  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    draw_line(img, raster.pixel_of(trajectory[i - 1]), raster.pixel_of(trajectory[i]),
              palette::kTrajectory);
  }

  if (light.radius > 0.0) {
    const Vec2 c = raster.pixel_of(light.position);
    const double r = light.radius * pixels_per_unit;
    const int px0 = std::max(0, static_cast<int>(std::floor(c.x() - r)));
    const int px1 = std::min(width - 1, static_cast<int>(std::ceil(c.x() + r)));
    const int py0 = std::max(0, static_cast<int>(std::floor(c.y() - r)));
    const int py1 = std::min(height - 1, static_cast<int>(std::ceil(c.y() + r)));
    for (int py = py0; py <= py1; ++py) {
      for (int px = px0; px <= px1; ++px) {
        if (std::hypot(px - c.x(), py - c.y()) <= r) img.set_pixel(px, py, palette::kLight);
      }
    }
  }
  return img;
}

std::string encode_ppm(const Image& image) {
  std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                    "\n255\n";
  out.append(reinterpret_cast<const char*>(image.rgb.data()), image.rgb.size());
  return out;
}

void write_ppm(const Image& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::system_error(errno, std::generic_category(), "cannot write '" + path.string() + "'");
  }
  const auto bytes = encode_ppm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::system_error(errno, std::generic_category(), "write failed for '" + path.string() + "'");
  }
}

}  // namespace floater
