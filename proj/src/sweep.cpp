#include "floater/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <thread>

namespace floater {

namespace {

std::string num(double v) {
  std::array<char, 32> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), r.ptr};
}

}  // namespace

bool SeedResult::approached() const {
  return metrics.min_dist < kApproachFraction * metrics.initial_dist;
}

SweepSummary summarize(std::span<const SeedResult> seeds) {
  SweepSummary s;
  s.runs = seeds.size();
  if (seeds.empty()) return s;
  std::vector<double> medians;
  std::vector<double> cycles;
  std::size_t approached = 0;
  std::size_t escaped = 0;
  for (const auto& r : seeds) {
    medians.push_back(r.metrics.median_dist);
    cycles.push_back(static_cast<double>(r.metrics.approach_retreat_cycles));
    approached += r.approached() ? 1 : 0;
    escaped += r.metrics.escaped ? 1 : 0;
  }
  const auto n = static_cast<double>(seeds.size());
  s.median_of_medians = median(medians);
  s.median_cycles = median(cycles);
  s.approach_rate = static_cast<double>(approached) / n;
  s.escape_rate = static_cast<double>(escaped) / n;
  return s;
}

SweepResult run_sweep(const SimConfig& base, std::span<const std::uint64_t> seeds,
                      unsigned threads, const SeedSink& sink) {
  base.validate();
  SweepResult out;
  out.seeds.resize(seeds.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, seeds.size())));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      SimConfig cfg = base;
      cfg.seed = seeds[i];
      const auto records = run_simulation(cfg);
      out.seeds[i] = {seeds[i], compute_metrics(records, cfg.light)};
      if (sink) sink(seeds[i], records);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  out.summary = summarize(out.seeds);
  return out;
}

std::string format_metrics(const TrajectoryMetrics& m) {
  std::string s;
  s += "initial_dist=" + num(m.initial_dist) + "\n";
  s += "final_dist=" + num(m.final_dist) + "\n";
  s += "mean_dist=" + num(m.mean_dist) + "\n";
  s += "median_dist=" + num(m.median_dist) + "\n";
  s += "min_dist=" + num(m.min_dist) + "\n";
  s += "max_dist=" + num(m.max_dist) + "\n";
  s += "radius_of_gyration=" + num(m.radius_of_gyration) + "\n";
  s += "approach_retreat_cycles=" + std::to_string(m.approach_retreat_cycles) + "\n";
  s += std::string("escaped=") + (m.escaped ? "true" : "false") + "\n";
  return s;
}

std::string format_summary(const SweepSummary& s) {
  std::string out;
  out += "runs=" + std::to_string(s.runs) + "\n";
  out += "median_of_medians=" + num(s.median_of_medians) + "\n";
  out += "approach_rate=" + num(s.approach_rate) + "\n";
  out += "escape_rate=" + num(s.escape_rate) + "\n";
  out += "median_cycles=" + num(s.median_cycles) + "\n";
  return out;
}

std::string format_seed_table(std::span<const SeedResult> seeds) {
  std::string out =
      "seed,median_dist,mean_dist,min_dist,max_dist,radius_of_gyration,cycles,escaped,"
      "approached\n";
  for (const auto& r : seeds) {
    const auto& m = r.metrics;
    out += std::to_string(r.seed) + "," + num(m.median_dist) + "," + num(m.mean_dist) + "," +
           num(m.min_dist) + "," + num(m.max_dist) + "," + num(m.radius_of_gyration) + "," +
           std::to_string(m.approach_retreat_cycles) + "," + (m.escaped ? "1" : "0") + "," +
           (r.approached() ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace floater
