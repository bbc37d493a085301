#ifndef FLOATER_STIMULUS_HPP
#define FLOATER_STIMULUS_HPP

#include <vector>

#include "floater/kinetics.hpp"
#include "floater/lattice.hpp"
#include "floater/rng.hpp"

namespace floater {

struct LightSource {
  Vec2 position = Vec2::Zero();
  double radius = 10.0;  // rendering only
};

/// Per-cell, per-step probability that an eligible resting edge cell fires.
class StimulusConfig {
 public:
  static constexpr double kDefaultProbability = 0.15;

  StimulusConfig() = default;
  /// Throws std::invalid_argument outside [0, 1].
  explicit StimulusConfig(double p_excite);

  [[nodiscard]] double p_excite() const noexcept { return p_excite_; }

 private:
  double p_excite_ = kDefaultProbability;
};

struct CellIndex {
  int x = 0;
  int y = 0;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

/// World coordinates of cell (x, y) of a width x height lattice at `pose`.
/// Throws std::out_of_range.
[[nodiscard]] Vec2 world_position_of_cell(const Pose& pose, int width, int height, int x, int y);

/// Perimeter cells in row-major order.
[[nodiscard]] std::vector<CellIndex> perimeter_cells(int width, int height);

/// Perimeter cells strictly farther from the light than the lattice centre
/// is, in row-major order.
[[nodiscard]] std::vector<CellIndex> eligible_boundary_cells(const Pose& pose, int width,
                                                             int height, const LightSource& light);

/// Fires each eligible Resting perimeter cell with probability p_excite.
/// One draw is taken per eligible Resting cell, in row-major order; other
/// cells are left untouched and consume nothing.
void apply_light_stimulus(Lattice& lattice, const Pose& pose, const LightSource& light,
                          const StimulusConfig& cfg, RandomStream& rng);

}  // namespace floater

#endif  // FLOATER_STIMULUS_HPP
