#include "floater/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace floater {

double TrajectoryMetrics::spread() const { return max_dist / std::max(min_dist_post, 1.0); }

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

std::int64_t count_approach_retreat_cycles(std::span<const double> distances) {
  if (distances.empty()) return 0;
  const double d0 = distances.front();
  const double r_in = kApproachFraction * d0;
  const double r_out = kRetreatFraction * d0;
  bool inside = false;
  std::int64_t cycles = 0;
  for (const double d : distances) {
    if (!inside && d < r_in) {
      inside = true;
    } else if (inside && d > r_out) {
      inside = false;
      ++cycles;
    }
  }
  return cycles;
}

TrajectoryMetrics compute_metrics(std::span<const double> distances, double transient_fraction) {
  if (distances.empty()) throw std::invalid_argument("compute_metrics: no records");
  if (!(transient_fraction >= 0.0 && transient_fraction < 1.0)) {
    throw std::invalid_argument("compute_metrics: transient_fraction must lie in [0, 1)");
  }
  const auto n = distances.size();
  const auto skip = std::min(
      static_cast<std::size_t>(std::floor(transient_fraction * static_cast<double>(n))), n - 1);
  const auto post = distances.subspan(skip);

  TrajectoryMetrics m;
  m.initial_dist = distances.front();
  m.final_dist = distances.back();
  m.min_dist = *std::min_element(distances.begin(), distances.end());
  m.max_dist = *std::max_element(post.begin(), post.end());
  m.min_dist_post = *std::min_element(post.begin(), post.end());
  m.mean_dist = std::accumulate(post.begin(), post.end(), 0.0) / static_cast<double>(post.size());
  m.median_dist = median({post.begin(), post.end()});
  const double sq = std::accumulate(post.begin(), post.end(), 0.0,
                                    [](double acc, double d) { return acc + d * d; });
  m.radius_of_gyration = std::sqrt(sq / static_cast<double>(post.size()));
  m.approach_retreat_cycles = count_approach_retreat_cycles(distances);
  m.escaped = m.final_dist > kEscapeFactor * m.initial_dist;
  return m;
}

TrajectoryMetrics compute_metrics(std::span<const TrajectoryRecord> records, const Vec2& light,
                                  double transient_fraction) {
  std::vector<double> d;
  d.reserve(records.size());
  for (const auto& r : records) d.push_back((r.pose.position - light).norm());
  return compute_metrics(d, transient_fraction);
}

}  // namespace floater
