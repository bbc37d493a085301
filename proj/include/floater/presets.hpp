#ifndef FLOATER_PRESETS_HPP
#define FLOATER_PRESETS_HPP

#include <array>
#include <optional>
#include <string_view>

#include "floater/config.hpp"

namespace floater {

struct Preset {
  std::string_view name;
  std::string_view rule;
  std::string_view description;
};

/// Figure presets: the 200x200 light-chasing run and the six rule variants
/// compared by trajectory shape.
inline constexpr std::array<Preset, 7> kPresets{{
    {"fig5", "2201", "snapshot series of a 200x200 lattice"},
    {"fig6a", "1899", "threshold excitation, compact trajectories"},
    {"fig6b", "1299", "upper-bounded excitation, looser trajectories"},
    {"fig6c", "2222", "narrow excitation and retention intervals"},
    {"fig6d", "2201", "wider retention interval"},
    {"fig6e", "2211", "wider retention interval"},
    {"fig6f", "2246", "long runs and tight loops"},
}};

[[nodiscard]] std::optional<Preset> find_preset(std::string_view name);

/// Default config of a preset: 200x200 lattice, 20000 steps.
[[nodiscard]] SimConfig preset_config(const Preset& preset);

}  // namespace floater

#endif  // FLOATER_PRESETS_HPP
