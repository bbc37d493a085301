#include "floater/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "floater/rule.hpp"

namespace floater {

namespace {

constexpr std::array<std::string_view, 18> kKeys = {
    "rule",     "width",    "height",      "light_x",     "light_y",     "light_radius",
    "pose_x",   "pose_y",   "heading",     "k_translate", "k_rotate",    "p_excite",
    "seed",     "steps",    "record_every", "render_every", "arena_halfwidth", "seed_cell"};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
    throw ConfigError("setting '" + std::string(key) + "': '" + std::string(v) +
                      "' is not a finite number");
  }
  return out;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view v) {
  Int out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("setting '" + std::string(key) + "': '" + std::string(v) +
                      "' is not an integer");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("setting '" + std::string(key) + "': '" + std::string(v) +
                    "' is not a boolean");
}

}  // namespace

bool is_known_setting(std::string_view key) {
  for (auto k : kKeys) {
    if (k == key) return true;
  }
  return false;
}

void SimConfig::validate() const {
  (void)parse_rule(rule);
  if (width < 3 || height < 3) throw ConfigError("lattice dimensions must be at least 3x3");
  if (steps < 1) throw ConfigError("steps must be >= 1");
  if (record_every < 1 || render_every < 1) {
    throw ConfigError("record_every and render_every must be >= 1");
  }
  if (!light.allFinite() || !initial_pose.position.allFinite() ||
      !std::isfinite(initial_pose.heading)) {
    throw ConfigError("light and pose coordinates must be finite");
  }
  if (!(std::isfinite(light_radius) && light_radius >= 0.0)) {
    throw ConfigError("light_radius must be finite and >= 0");
  }
  if (!(p_excite >= 0.0 && p_excite <= 1.0)) throw ConfigError("p_excite must lie in [0, 1]");
  if (!(std::isfinite(arena_halfwidth) && arena_halfwidth > 0.0)) {
    throw ConfigError("arena_halfwidth must be finite and > 0");
  }
  try {
    gains.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SimConfig default_config(int width, int height) {
  SimConfig cfg;
  cfg.width = width;
  cfg.height = height;
  const double d0 = 1.5 * width;
  cfg.light = Vec2(d0, 0.0);
  cfg.arena_halfwidth = 10.0 * d0;
  return cfg;
}

Settings parse_settings(std::string_view text) {
  Settings out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!is_known_setting(key)) {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
    out.insert_or_assign(std::string(key), std::string(value));
  }
  return out;
}

Settings load_settings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_settings(buf.str());
}

SimConfig resolve_config(const Settings& settings) {
  for (const auto& [key, value] : settings) {
    if (!is_known_setting(key)) throw ConfigError("unknown setting '" + key + "'");
  }
  auto get = [&](std::string_view key) -> const std::string* {
    const auto it = settings.find(key);
    return it == settings.end() ? nullptr : &it->second;
  };

  int width = 200;
  if (const auto* v = get("width")) width = to_int<int>("width", *v);
  int height = width;
  if (const auto* v = get("height")) height = to_int<int>("height", *v);

  SimConfig cfg = default_config(width, height);
  if (const auto* v = get("rule")) cfg.rule = *v;
  if (const auto* v = get("light_x")) cfg.light.x() = to_double("light_x", *v);
  if (const auto* v = get("light_y")) cfg.light.y() = to_double("light_y", *v);
  if (const auto* v = get("light_radius")) cfg.light_radius = to_double("light_radius", *v);
  if (const auto* v = get("pose_x")) cfg.initial_pose.position.x() = to_double("pose_x", *v);
  if (const auto* v = get("pose_y")) cfg.initial_pose.position.y() = to_double("pose_y", *v);
  if (const auto* v = get("heading")) {
    cfg.initial_pose.heading = wrap_angle(to_double("heading", *v));
  }
  if (const auto* v = get("k_translate")) cfg.gains.k_translate = to_double("k_translate", *v);
  if (const auto* v = get("k_rotate")) cfg.gains.k_rotate = to_double("k_rotate", *v);
  if (const auto* v = get("p_excite")) cfg.p_excite = to_double("p_excite", *v);
  if (const auto* v = get("seed")) cfg.seed = to_int<std::uint64_t>("seed", *v);
  if (const auto* v = get("steps")) cfg.steps = to_int<std::int64_t>("steps", *v);
  if (const auto* v = get("record_every")) {
    cfg.record_every = to_int<std::int64_t>("record_every", *v);
  }
  if (const auto* v = get("render_every")) {
    cfg.render_every = to_int<std::int64_t>("render_every", *v);
  }
  if (const auto* v = get("seed_cell")) cfg.seed_cell = to_bool("seed_cell", *v);
  if (const auto* v = get("arena_halfwidth")) {
    cfg.arena_halfwidth = to_double("arena_halfwidth", *v);
  } else if (get("light_x") || get("light_y") || get("pose_x") || get("pose_y")) {
    cfg.arena_halfwidth = std::max(10.0 * cfg.initial_distance(), double(cfg.width));
  }
  cfg.validate();
  return cfg;
}

}  // namespace floater
