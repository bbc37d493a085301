#include "floater/protocol.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace floater::protocol {

using nlohmann::json;

std::string encode_rle(std::span<const std::uint8_t> digits) {
  std::string out;
  std::size_t i = 0;
  while (i < digits.size()) {
    std::size_t j = i + 1;
    while (j < digits.size() && digits[j] == digits[i]) ++j;
    if (!out.empty()) out.push_back(',');
    out += std::to_string(j - i);
    out.push_back('x');
    out.push_back(static_cast<char>('0' + digits[i]));
    i = j;
  }
  return out;
}

std::vector<std::uint8_t> decode_rle(std::string_view rle, std::size_t expected_cells) {
  std::vector<std::uint8_t> out;
  out.reserve(expected_cells);
  while (!rle.empty()) {
    const auto comma = rle.find(',');
    const std::string_view token = rle.substr(0, comma);
    rle.remove_prefix(comma == std::string_view::npos ? rle.size() : comma + 1);
    if (comma != std::string_view::npos && rle.empty()) {
      throw DecodeError("rle: trailing comma");
    }
    const auto x = token.find('x');
    if (x == std::string_view::npos || x == 0 || x + 2 != token.size()) {
      throw DecodeError("rle: malformed token '" + std::string(token) + "'");
    }
    std::size_t count = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + x, count);
    if (ec != std::errc{} || ptr != token.data() + x || count == 0) {
      throw DecodeError("rle: bad run length in '" + std::string(token) + "'");
    }
    const char digit = token[x + 1];
    if (digit < '0' || digit > '2') {
      throw DecodeError("rle: bad cell state in '" + std::string(token) + "'");
    }
    if (count > expected_cells - out.size()) {
      throw DecodeError("rle: decodes to more than " + std::to_string(expected_cells) + " cells");
    }
    out.insert(out.end(), count, static_cast<std::uint8_t>(digit - '0'));
  }
  if (out.size() != expected_cells) {
    throw DecodeError("rle: decodes to " + std::to_string(out.size()) + " cells, expected " +
                      std::to_string(expected_cells));
  }
  return out;
}

std::string encode_grid(const Lattice& lattice) { return encode_rle(lattice.cells()); }

Lattice decode_grid(std::string_view rle, int width, int height) {
  if (width <= 0 || height <= 0) throw DecodeError("grid: non-positive dimensions");
  Lattice out(width, height);
  const auto digits = decode_rle(rle, out.size());
  std::copy(digits.begin(), digits.end(), out.cells().begin());
  return out;
}

namespace {

json parse_object(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw DecodeError("invalid JSON");
  if (!j.is_object()) throw DecodeError("expected a JSON object");
  return j;
}

const json& field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw DecodeError(std::string("missing field '") + name + "'");
  return *it;
}

double number(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number()) throw DecodeError(std::string("field '") + name + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw DecodeError(std::string("field '") + name + "' must be finite");
  return d;
}

template <typename Int>
Int integer(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) {
    throw DecodeError(std::string("field '") + name + "' must be an integer");
  }
  return v.get<Int>();
}

std::string string_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_string()) throw DecodeError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string encode_frame(const StateFrame& f) {
  json j;
  j["type"] = "state";
  j["step"] = f.step;
  j["pose"] = {{"x", f.pose.position.x()}, {"y", f.pose.position.y()}, {"heading", f.pose.heading}};
  j["light"] = {{"x", f.light.x()}, {"y", f.light.y()}};
  j["excited"] = f.excited;
  j["width"] = f.width;
  j["height"] = f.height;
  j["grid"] = f.grid;
  j["dist"] = f.dist_to_light;
  j["rule"] = f.rule;
  j["paused"] = f.paused;
  return j.dump();
}

StateFrame decode_frame(std::string_view line) {
  const json j = parse_object(line);
  try {
    if (string_field(j, "type") != "state") throw DecodeError("not a state frame");
    StateFrame f;
    f.step = integer<std::int64_t>(j, "step");
    const json& pose = field(j, "pose");
    f.pose.position = {number(pose, "x"), number(pose, "y")};
    f.pose.heading = number(pose, "heading");
    const json& light = field(j, "light");
    f.light = {number(light, "x"), number(light, "y")};
    f.excited = integer<std::int64_t>(j, "excited");
    f.width = integer<int>(j, "width");
    f.height = integer<int>(j, "height");
    f.grid = string_field(j, "grid");
    f.dist_to_light = number(j, "dist");
    f.rule = string_field(j, "rule");
    const json& paused = field(j, "paused");
    if (!paused.is_boolean()) throw DecodeError("field 'paused' must be a boolean");
    f.paused = paused.get<bool>();
    if (f.width <= 0 || f.height <= 0) throw DecodeError("frame has non-positive dimensions");
    (void)decode_rle(f.grid, static_cast<std::size_t>(f.width) * static_cast<std::size_t>(f.height));
    return f;
  } catch (const json::exception& e) {
    throw DecodeError(e.what());
  }
}

std::string encode_command(const ClientCommand& command) {
  json j = std::visit(
      overloaded{
          [](const SetLight& c) {
            return json{{"cmd", "set_light"}, {"x", c.position.x()}, {"y", c.position.y()}};
          },
          [](const Pause&) { return json{{"cmd", "pause"}}; },
          [](const Resume&) { return json{{"cmd", "resume"}}; },
          [](const Reset& c) { return json{{"cmd", "reset"}, {"seed", c.seed}}; },
          [](const SetRule& c) { return json{{"cmd", "set_rule"}, {"code", format_rule(c.rule)}}; },
          [](const SetSpeed& c) {
            return json{{"cmd", "set_speed"}, {"steps_per_second", c.steps_per_second}};
          },
      },
      command);
  return j.dump();
}

ClientCommand decode_command(std::string_view line) {
  const json j = parse_object(line);
  try {
    const std::string cmd = string_field(j, "cmd");
    if (cmd == "set_light") return SetLight{Vec2(number(j, "x"), number(j, "y"))};
    if (cmd == "pause") return Pause{};
    if (cmd == "resume") return Resume{};
    if (cmd == "reset") {
      if (!field(j, "seed").is_number_unsigned()) {
        throw DecodeError("field 'seed' must be a non-negative integer");
      }
      return Reset{field(j, "seed").get<std::uint64_t>()};
    }
    if (cmd == "set_rule") {
      try {
        return SetRule{parse_rule(string_field(j, "code"))};
      } catch (const RuleParseError& e) {
        throw DecodeError(e.what());
      }
    }
    if (cmd == "set_speed") {
      const auto sps = integer<std::int64_t>(j, "steps_per_second");
      if (sps < SetSpeed::kMin || sps > SetSpeed::kMax) {
        throw DecodeError("steps_per_second must lie in [1, 1000]");
      }
      return SetSpeed{static_cast<int>(sps)};
    }
    throw DecodeError("unknown cmd '" + cmd + "'");
  } catch (const json::exception& e) {
    throw DecodeError(e.what());
  }
}

std::string encode_error(std::string_view message) {
  return json{{"type", "error"}, {"message", std::string(message)}}.dump();
}

}  // namespace floater::protocol
