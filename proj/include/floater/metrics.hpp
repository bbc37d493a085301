#ifndef FLOATER_METRICS_HPP
#define FLOATER_METRICS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "floater/kinetics.hpp"
#include "floater/simulation.hpp"

namespace floater {

/// Approach/retreat thresholds as fractions of the initial distance D0.
inline constexpr double kApproachFraction = 0.25;
inline constexpr double kRetreatFraction = 0.5;
inline constexpr double kEscapeFactor = 2.0;
inline constexpr double kDefaultTransientFraction = 0.2;

struct TrajectoryMetrics {
  double initial_dist = 0.0;
  double final_dist = 0.0;
  double mean_dist = 0.0;    // post-transient
  double median_dist = 0.0;  // post-transient
  double min_dist = 0.0;     // whole run
  double max_dist = 0.0;     // post-transient
  double min_dist_post = 0.0;
  double radius_of_gyration = 0.0;  // rms distance to the light, post-transient
  std::int64_t approach_retreat_cycles = 0;
  bool escaped = false;

  /// max_dist / min_dist_post, with the denominator floored at one cell.
  [[nodiscard]] double spread() const;
};

/// Counts completed cycles of falling below r_in = 0.25 * D0 and then rising
/// above r_out = 0.5 * D0. D0 is the first element.
[[nodiscard]] std::int64_t count_approach_retreat_cycles(std::span<const double> distances);

/// Metrics over a distance series. Throws std::invalid_argument when empty
/// or when transient_fraction is outside [0, 1).
[[nodiscard]] TrajectoryMetrics compute_metrics(std::span<const double> distances,
                                                double transient_fraction =
                                                    kDefaultTransientFraction);

/// Distances are recomputed from record positions against `light`.
[[nodiscard]] TrajectoryMetrics compute_metrics(std::span<const TrajectoryRecord> records,
                                                const Vec2& light,
                                                double transient_fraction =
                                                    kDefaultTransientFraction);

[[nodiscard]] double median(std::vector<double> values);

}  // namespace floater

#endif  // FLOATER_METRICS_HPP
