#include "floater/trajectory_csv.hpp"

#include <array>
#include <cerrno>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace floater {

namespace {

void append_number(std::string& out, double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

void append_number(std::string& out, std::int64_t v) {
  std::array<char, 24> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

template <typename T>
T parse_field(std::string_view field, std::size_t line) {
  T v{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("trajectory csv line " + std::to_string(line) + ": bad field '" +
                                std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string format_trajectory_csv(std::span<const TrajectoryRecord> records) {
  std::string out(kTrajectoryCsvHeader);
  out.push_back('\n');
  for (const auto& r : records) {
    append_number(out, r.step);
    for (const double v : {r.pose.position.x(), r.pose.position.y(), r.pose.heading, r.force.x(),
                           r.force.y(), r.torque}) {
      out.push_back(',');
      append_number(out, v);
    }
    out.push_back(',');
    append_number(out, r.excited);
    out.push_back(',');
    append_number(out, r.refractory);
    out.push_back(',');
    append_number(out, r.dist_to_light);
    out.push_back('\n');
  }
  return out;
}

void write_trajectory_csv(std::span<const TrajectoryRecord> records,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::system_error(errno, std::generic_category(), "cannot write '" + path.string() + "'");
  }
  const auto text = format_trajectory_csv(records);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) {
    throw std::system_error(errno, std::generic_category(), "write failed for '" + path.string() + "'");
  }
}

std::vector<TrajectoryRecord> parse_trajectory_csv(std::string_view text) {
  std::vector<TrajectoryRecord> records;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line_no == 1) {
      if (line != kTrajectoryCsvHeader) {
        throw std::invalid_argument("trajectory csv: unexpected header '" + std::string(line) +
                                    "'");
      }
      continue;
    }
    if (line.empty()) continue;
    std::array<std::string_view, 10> f{};
    std::size_t n = 0;
    std::string_view rest = line;
    while (n < f.size()) {
      const auto comma = rest.find(',');
      f[n++] = rest.substr(0, comma);
      if (comma == std::string_view::npos) {
        rest = {};
        break;
      }
      rest.remove_prefix(comma + 1);
    }
    if (n != f.size() || !rest.empty()) {
      throw std::invalid_argument("trajectory csv line " + std::to_string(line_no) +
                                  ": expected 10 fields");
    }
    TrajectoryRecord r;
    r.step = parse_field<std::int64_t>(f[0], line_no);
    r.pose.position = {parse_field<double>(f[1], line_no), parse_field<double>(f[2], line_no)};
    r.pose.heading = parse_field<double>(f[3], line_no);
    r.force = {parse_field<double>(f[4], line_no), parse_field<double>(f[5], line_no)};
    r.torque = parse_field<double>(f[6], line_no);
    r.excited = parse_field<std::int64_t>(f[7], line_no);
    r.refractory = parse_field<std::int64_t>(f[8], line_no);
    r.dist_to_light = parse_field<double>(f[9], line_no);
    records.push_back(r);
  }
  if (line_no == 0) throw std::invalid_argument("trajectory csv: empty input");
  return records;
}

std::vector<TrajectoryRecord> read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::system_error(errno, std::generic_category(), "cannot read '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trajectory_csv(buf.str());
}

}  // namespace floater
