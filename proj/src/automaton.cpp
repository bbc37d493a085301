#include "floater/automaton.hpp"

#include <stdexcept>
#include <string>

namespace floater {

int count_excited_neighbors(const Lattice& lattice, int x, int y) {
  if (!lattice.contains(x, y)) {
    throw std::out_of_range("cell (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") outside lattice");
  }
  int sigma = 0;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const int nx = x + dx;
      const int ny = y + dy;
      if (lattice.contains(nx, ny) && lattice(nx, ny) == CellState::Excited) ++sigma;
    }
  }
  return sigma;
}

Lattice step_lattice(const Lattice& lattice, const RuleParams& rule) {
  Automaton automaton(rule);
  Lattice next;
  automaton.step(lattice, next);
  return next;
}

Automaton::Automaton(const RuleParams& rule) : rule_(rule), table_(make_transition_table(rule)) {}

void Automaton::set_rule(const RuleParams& rule) {
  rule_ = rule;
  table_ = make_transition_table(rule);
}

void Automaton::step(const Lattice& src, Lattice& dst) {
  const int w = src.width();
  const int h = src.height();
  const auto pw = static_cast<std::size_t>(w + 2);
  mask_.assign(pw * static_cast<std::size_t>(h + 2), 0);

  const auto in = src.cells();
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = in.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w);
    std::uint8_t* m = mask_.data() + static_cast<std::size_t>(y + 1) * pw + 1;
    for (int x = 0; x < w; ++x) m[x] = row[x] == 1 ? 1 : 0;
  }

  if (dst.width() != w || dst.height() != h) dst = Lattice(w, h);
  auto out = dst.cells();
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* up = mask_.data() + static_cast<std::size_t>(y) * pw;
    const std::uint8_t* mid = up + pw;
    const std::uint8_t* down = mid + pw;
    const std::size_t base = static_cast<std::size_t>(y) * static_cast<std::size_t>(w);
    for (int x = 0; x < w; ++x) {
      const int sigma = up[x] + up[x + 1] + up[x + 2] + mid[x] + mid[x + 2] + down[x] +
                        down[x + 1] + down[x + 2];
      out[base + static_cast<std::size_t>(x)] =
          table_[static_cast<std::size_t>(in[base + static_cast<std::size_t>(x)] * 9 + sigma)];
    }
  }
  dst.set_generation(src.generation() + 1);
}

}  // namespace floater
