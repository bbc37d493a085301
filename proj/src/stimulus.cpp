#include "floater/stimulus.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace floater {

StimulusConfig::StimulusConfig(double p_excite) : p_excite_(p_excite) {
  if (!(p_excite >= 0.0 && p_excite <= 1.0)) {
    throw std::invalid_argument("p_excite must lie in [0, 1], got " + std::to_string(p_excite));
  }
}

Vec2 world_position_of_cell(const Pose& pose, int width, int height, int x, int y) {
  if (x < 0 || y < 0 || x >= width || y >= height) {
    throw std::out_of_range("cell (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") outside " + std::to_string(width) + "x" + std::to_string(height) +
                            " lattice");
  }
  return pose.position + rotation(pose.heading) * cell_offset(width, height, x, y);
}

std::vector<CellIndex> perimeter_cells(int width, int height) {
  std::vector<CellIndex> out;
  for (int y = 0; y < height; ++y) {
    if (y == 0 || y == height - 1) {
      for (int x = 0; x < width; ++x) out.push_back({x, y});
    } else {
      out.push_back({0, y});
      if (width > 1) out.push_back({width - 1, y});
    }
  }
  return out;
}

std::vector<CellIndex> eligible_boundary_cells(const Pose& pose, int width, int height,
                                               const LightSource& light) {
  const double centre_dist = (pose.position - light.position).norm();
  const auto rot = rotation(pose.heading);
  std::vector<CellIndex> out;
  for (const auto& c : perimeter_cells(width, height)) {
    const Vec2 p = pose.position + rot * cell_offset(width, height, c.x, c.y);
    if ((p - light.position).norm() > centre_dist) out.push_back(c);
  }
  return out;
}

void apply_light_stimulus(Lattice& lattice, const Pose& pose, const LightSource& light,
                          const StimulusConfig& cfg, RandomStream& rng) {
  const double p = cfg.p_excite();
  for (const auto& c : eligible_boundary_cells(pose, lattice.width(), lattice.height(), light)) {
    if (lattice(c.x, c.y) != CellState::Resting) continue;
    if (rng.bernoulli(p)) lattice.set(c.x, c.y, CellState::Excited);
  }
}

}  // namespace floater
