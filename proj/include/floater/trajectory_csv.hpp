#ifndef FLOATER_TRAJECTORY_CSV_HPP
#define FLOATER_TRAJECTORY_CSV_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "floater/simulation.hpp"

namespace floater {

inline constexpr std::string_view kTrajectoryCsvHeader =
    "step,x,y,heading,fx,fy,torque,excited,refractory,dist";

/// Header plus one row per record. Reals use the shortest representation
/// that parses back to the same double.
[[nodiscard]] std::string format_trajectory_csv(std::span<const TrajectoryRecord> records);

/// Throws std::system_error carrying the OS message on I/O failure.
void write_trajectory_csv(std::span<const TrajectoryRecord> records,
                          const std::filesystem::path& path);

/// Throws std::invalid_argument on malformed content.
[[nodiscard]] std::vector<TrajectoryRecord> parse_trajectory_csv(std::string_view text);
[[nodiscard]] std::vector<TrajectoryRecord> read_trajectory_csv(const std::filesystem::path& path);

}  // namespace floater

#endif  // FLOATER_TRAJECTORY_CSV_HPP
