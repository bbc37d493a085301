#include "floater/presets.hpp"

namespace floater {

std::optional<Preset> find_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

SimConfig preset_config(const Preset& preset) {
  SimConfig cfg = default_config(200, 200);
  cfg.rule = std::string(preset.rule);
  cfg.steps = 20000;
  return cfg;
}

}  // namespace floater
