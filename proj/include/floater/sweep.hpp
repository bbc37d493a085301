#ifndef FLOATER_SWEEP_HPP
#define FLOATER_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "floater/config.hpp"
#include "floater/metrics.hpp"
#include "floater/simulation.hpp"

namespace floater {

struct SeedResult {
  std::uint64_t seed = 0;
  TrajectoryMetrics metrics;
  /// min_dist fell below the approach radius.
  [[nodiscard]] bool approached() const;
};

struct SweepSummary {
  std::size_t runs = 0;
  double median_of_medians = 0.0;
  double approach_rate = 0.0;
  double escape_rate = 0.0;
  double median_cycles = 0.0;
};

struct SweepResult {
  std::vector<SeedResult> seeds;
  SweepSummary summary;
};

/// Called once per finished seed with its full trajectory (from the worker
/// thread that ran it).
using SeedSink = std::function<void(std::uint64_t, std::span<const TrajectoryRecord>)>;

/// Runs `base` once per seed. Seeds are independent, so up to `threads`
/// run concurrently; results keep the order of `seeds`.
[[nodiscard]] SweepResult run_sweep(const SimConfig& base, std::span<const std::uint64_t> seeds,
                                    unsigned threads = 0, const SeedSink& sink = {});

[[nodiscard]] SweepSummary summarize(std::span<const SeedResult> seeds);

/// key=value lines, one per metric.
[[nodiscard]] std::string format_metrics(const TrajectoryMetrics& m);
[[nodiscard]] std::string format_summary(const SweepSummary& s);
/// Per-seed metric table with a header row.
[[nodiscard]] std::string format_seed_table(std::span<const SeedResult> seeds);

}  // namespace floater

#endif  // FLOATER_SWEEP_HPP
