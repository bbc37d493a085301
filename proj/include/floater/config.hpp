#ifndef FLOATER_CONFIG_HPP
#define FLOATER_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "floater/kinetics.hpp"

namespace floater {

/// Everything that determines a run. Given the same SimConfig the full state
/// sequence is reproduced bit for bit.
struct SimConfig {
  std::string rule = "2201";
  int width = 200;
  int height = 200;
  Vec2 light = Vec2(300.0, 0.0);
  double light_radius = 10.0;
  Pose initial_pose;
  MotionGains gains;
  double p_excite = 0.15;
  std::uint64_t seed = 42;
  std::int64_t steps = 20000;
  std::int64_t record_every = 10;
  std::int64_t render_every = 1000;
  double arena_halfwidth = 3000.0;
  bool seed_cell = true;  // start with one excited cell at the lattice centre

  /// Initial light-to-centre distance.
  [[nodiscard]] double initial_distance() const { return (light - initial_pose.position).norm(); }

  /// Throws RuleParseError for a bad rule code, ConfigError otherwise.
  void validate() const;
};

/// Default configuration for a width x height lattice: the floater starts at
/// the origin with heading 0 and the light 1.5 * width due east; the arena
/// clamp is ten times that distance.
[[nodiscard]] SimConfig default_config(int width, int height);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered key=value settings. Keys are SimConfig field names:
/// rule, width, height, light_x, light_y, light_radius, pose_x, pose_y,
/// heading, k_translate, k_rotate, p_excite, seed, steps, record_every,
/// render_every, arena_halfwidth, seed_cell.
using Settings = std::map<std::string, std::string, std::less<>>;

/// Parses flat UTF-8 `key = value` text. Blank lines and lines starting with
/// '#' are skipped. Unknown keys and malformed lines throw ConfigError.
[[nodiscard]] Settings parse_settings(std::string_view text);
[[nodiscard]] Settings load_settings(const std::filesystem::path& path);

/// Builds a config from settings. Geometry-dependent defaults (light
/// position, arena size) follow width unless given explicitly. The result
/// is validated.
[[nodiscard]] SimConfig resolve_config(const Settings& settings);

[[nodiscard]] bool is_known_setting(std::string_view key);

}  // namespace floater

#endif  // FLOATER_CONFIG_HPP
