#ifndef FLOATER_SNAPSHOT_HPP
#define FLOATER_SNAPSHOT_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "floater/kinetics.hpp"
#include "floater/lattice.hpp"
#include "floater/stimulus.hpp"

namespace floater {

using Rgb = std::array<std::uint8_t, 3>;

namespace palette {
inline constexpr Rgb kBackground{255, 255, 255};
inline constexpr Rgb kExcited{0, 0, 0};
inline constexpr Rgb kRefractory{128, 128, 128};
inline constexpr Rgb kResting{220, 220, 220};
inline constexpr Rgb kLight{0, 0, 0};
inline constexpr Rgb kTrajectory{128, 128, 128};
}  // namespace palette

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, top row first

  Image() = default;
  Image(int w, int h, Rgb fill);

  [[nodiscard]] Rgb pixel(int x, int y) const;
  void set_pixel(int x, int y, Rgb c);
  [[nodiscard]] std::size_t count(Rgb c) const;
};

/// Axis-aligned world rectangle; north (+y) is drawn at the top.
struct WorldWindow {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  [[nodiscard]] static WorldWindow centred(const Vec2& centre, double half_extent);
};

/// Rasterises one frame: lattice cells at their world positions, the
/// trajectory as a 1 px polyline, and the light as a solid disc on top.
/// Throws std::invalid_argument for a non-positive scale or empty window.
[[nodiscard]] Image render_snapshot(const Lattice& lattice, const Pose& pose,
                                    const LightSource& light, std::span<const Vec2> trajectory,
                                    const WorldWindow& window, double pixels_per_unit);

/// Binary P6 pixmap bytes.
[[nodiscard]] std::string encode_ppm(const Image& image);
void write_ppm(const Image& image, const std::filesystem::path& path);

}  // namespace floater

#endif  // FLOATER_SNAPSHOT_HPP
