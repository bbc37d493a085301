#ifndef FLOATER_LATTICE_HPP
#define FLOATER_LATTICE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "floater/rule.hpp"

namespace floater {

/// Rectangular grid of three-state cells. Cell (x, y) is column x, row y;
/// storage is row-major with rows = height, so data()[y * width + x].
class Lattice {
 public:
  using Storage = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Lattice() = default;
  /// All cells Resting. Throws std::invalid_argument on a non-positive size.
  Lattice(int width, int height);

  [[nodiscard]] int width() const noexcept { return static_cast<int>(states_.cols()); }
  [[nodiscard]] int height() const noexcept { return static_cast<int>(states_.rows()); }
  [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(states_.size()); }
  [[nodiscard]] std::uint64_t generation() const noexcept { return generation_; }

  [[nodiscard]] bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width() && y < height();
  }

  /// Bounds-checked access; throws std::out_of_range.
  [[nodiscard]] CellState at(int x, int y) const;
  void set(int x, int y, CellState s);

  /// Unchecked access for hot loops.
  [[nodiscard]] CellState operator()(int x, int y) const noexcept {
    return static_cast<CellState>(states_(y, x));
  }

  [[nodiscard]] std::span<const std::uint8_t> cells() const noexcept {
    return {states_.data(), size()};
  }
  [[nodiscard]] std::span<std::uint8_t> cells() noexcept { return {states_.data(), size()}; }

  [[nodiscard]] const Storage& storage() const noexcept { return states_; }

  void fill(CellState s) { states_.setConstant(static_cast<std::uint8_t>(s)); }
  void advance_generation() noexcept { ++generation_; }
  void set_generation(std::uint64_t g) noexcept { generation_ = g; }

  [[nodiscard]] std::size_t count(CellState s) const noexcept {
    return static_cast<std::size_t>((states_ == static_cast<std::uint8_t>(s)).count());
  }

  /// Mirror about the vertical centre axis (column x -> width-1-x).
  [[nodiscard]] Lattice mirrored_horizontally() const;
  /// Point reflection through the centre.
  [[nodiscard]] Lattice rotated_180() const;

  /// `height` lines of `width` digits (0 resting, 1 excited, 2 refractory),
  /// each LF-terminated. Row 0 is the first line.
  [[nodiscard]] std::string to_text() const;
  /// Inverse of to_text; generation is reset to 0. Throws std::invalid_argument.
  static Lattice from_text(std::string_view text);

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.width() == b.width() && a.height() == b.height() && (a.states_ == b.states_).all();
  }

 private:
  Storage states_;
  std::uint64_t generation_ = 0;
};

}  // namespace floater

#endif  // FLOATER_LATTICE_HPP
