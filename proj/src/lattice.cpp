#include "floater/lattice.hpp"

#include <stdexcept>
#include <vector>

namespace floater {

Lattice::Lattice(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("lattice dimensions must be positive, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
  states_ = Storage::Zero(height, width);
}

CellState Lattice::at(int x, int y) const {
  if (!contains(x, y)) {
    throw std::out_of_range("cell (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") outside " + std::to_string(width()) + "x" +
                            std::to_string(height()) + " lattice");
  }
  return (*this)(x, y);
}

void Lattice::set(int x, int y, CellState s) {
  if (!contains(x, y)) {
    throw std::out_of_range("cell (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") outside " + std::to_string(width()) + "x" +
                            std::to_string(height()) + " lattice");
  }
  states_(y, x) = static_cast<std::uint8_t>(s);
}

Lattice Lattice::mirrored_horizontally() const {
  Lattice out = *this;
  out.states_ = states_.rowwise().reverse();
  return out;
}

Lattice Lattice::rotated_180() const {
  Lattice out = *this;
  out.states_ = states_.reverse();
  return out;
}

std::string Lattice::to_text() const {
  std::string out;
  out.reserve(size() + static_cast<std::size_t>(height()));
  for (int y = 0; y < height(); ++y) {
    for (int x = 0; x < width(); ++x) {
      out.push_back(static_cast<char>('0' + states_(y, x)));
    }
    out.push_back('\n');
  }
  return out;
}

Lattice Lattice::from_text(std::string_view text) {
  std::vector<std::string_view> rows;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    if (nl == std::string_view::npos) {
      throw std::invalid_argument("lattice text must be LF-terminated");
    }
    rows.push_back(text.substr(0, nl));
    text.remove_prefix(nl + 1);
  }
  if (rows.empty() || rows.front().empty()) {
    throw std::invalid_argument("lattice text is empty");
  }
  const auto width = static_cast<int>(rows.front().size());
  Lattice out(width, static_cast<int>(rows.size()));
  for (std::size_t y = 0; y < rows.size(); ++y) {
    if (static_cast<int>(rows[y].size()) != width) {
      throw std::invalid_argument("lattice text row " + std::to_string(y) + " has length " +
                                  std::to_string(rows[y].size()) + ", expected " +
                                  std::to_string(width));
    }
    for (int x = 0; x < width; ++x) {
      const char c = rows[y][static_cast<std::size_t>(x)];
      if (c < '0' || c > '2') {
        throw std::invalid_argument("lattice text row " + std::to_string(y) + " column " +
                                    std::to_string(x) + ": invalid state '" +
                                    std::string(1, c) + "'");
      }
      out.states_(static_cast<Eigen::Index>(y), x) = static_cast<std::uint8_t>(c - '0');
    }
  }
  return out;
}

}  // namespace floater
