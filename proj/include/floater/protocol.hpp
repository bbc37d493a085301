#ifndef FLOATER_PROTOCOL_HPP
#define FLOATER_PROTOCOL_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "floater/kinetics.hpp"
#include "floater/lattice.hpp"
#include "floater/rule.hpp"

namespace floater::protocol {

// Steering wire format: one UTF-8 JSON object per LF-terminated line.
// Client -> server objects carry "cmd"; server -> client frames carry "type".

struct SetLight {
  Vec2 position = Vec2::Zero();
  friend bool operator==(const SetLight&, const SetLight&) = default;
};
struct Pause {
  friend bool operator==(const Pause&, const Pause&) = default;
};
struct Resume {
  friend bool operator==(const Resume&, const Resume&) = default;
};
struct Reset {
  std::uint64_t seed = 0;
  friend bool operator==(const Reset&, const Reset&) = default;
};
struct SetRule {
  RuleParams rule;
  friend bool operator==(const SetRule&, const SetRule&) = default;
};
struct SetSpeed {
  static constexpr int kMin = 1;
  static constexpr int kMax = 1000;
  int steps_per_second = 100;
  friend bool operator==(const SetSpeed&, const SetSpeed&) = default;
};

using ClientCommand = std::variant<SetLight, Pause, Resume, Reset, SetRule, SetSpeed>;

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Snapshot of the running simulation sent to clients.
struct StateFrame {
  std::int64_t step = 0;
  Pose pose;
  Vec2 light = Vec2::Zero();
  std::int64_t excited = 0;
  int width = 0;
  int height = 0;
  std::string grid;  // run-length encoded, row-major state digits
  double dist_to_light = 0.0;
  std::string rule;
  bool paused = false;

  friend bool operator==(const StateFrame& a, const StateFrame& b) {
    return a.step == b.step && a.pose.position == b.pose.position &&
           a.pose.heading == b.pose.heading && a.light == b.light && a.excited == b.excited &&
           a.width == b.width && a.height == b.height && a.grid == b.grid &&
           a.dist_to_light == b.dist_to_light && a.rule == b.rule && a.paused == b.paused;
  }
};

/// "<count>x<digit>" runs joined by commas, e.g. "9x0" for nine resting cells.
[[nodiscard]] std::string encode_rle(std::span<const std::uint8_t> digits);
/// Throws DecodeError on bad grammar, a digit outside 0..2, or a decoded
/// length different from `expected_cells`.
[[nodiscard]] std::vector<std::uint8_t> decode_rle(std::string_view rle,
                                                   std::size_t expected_cells);

[[nodiscard]] std::string encode_grid(const Lattice& lattice);
[[nodiscard]] Lattice decode_grid(std::string_view rle, int width, int height);

/// Serialised line without the trailing LF.
[[nodiscard]] std::string encode_frame(const StateFrame& frame);
[[nodiscard]] StateFrame decode_frame(std::string_view line);

[[nodiscard]] std::string encode_command(const ClientCommand& command);
/// Throws DecodeError on invalid JSON, an unknown "cmd", missing or
/// ill-typed fields, non-finite coordinates, a bad rule code or an
/// out-of-range speed.
[[nodiscard]] ClientCommand decode_command(std::string_view line);

[[nodiscard]] std::string encode_error(std::string_view message);

}  // namespace floater::protocol

#endif  // FLOATER_PROTOCOL_HPP
