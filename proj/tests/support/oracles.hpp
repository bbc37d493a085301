// Naive reference implementations used only by tests. They share no code
// with the library beyond the Lattice container.
#ifndef FLOATER_TESTS_ORACLES_HPP
#define FLOATER_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "floater/lattice.hpp"

namespace oracle {

struct Rule {
  int t1, t2, d1, d2;
};

inline int excited_around(const floater::Lattice& l, int x, int y) {
  int n = 0;
  for (int yy = y - 1; yy <= y + 1; ++yy) {
    for (int xx = x - 1; xx <= x + 1; ++xx) {
      if (xx == x && yy == y) continue;
      if (xx < 0 || yy < 0 || xx >= l.width() || yy >= l.height()) continue;
      if (l.at(xx, yy) == floater::CellState::Excited) n += 1;
    }
  }
  return n;
}

inline floater::Lattice step(const floater::Lattice& in, Rule r) {
  floater::Lattice out(in.width(), in.height());
  for (int y = 0; y < in.height(); ++y) {
    for (int x = 0; x < in.width(); ++x) {
      const int s = excited_around(in, x, y);
      const auto state = in.at(x, y);
      floater::CellState next = floater::CellState::Resting;
      if (state == floater::CellState::Resting) {
        if (s >= r.t1 && s <= r.t2) next = floater::CellState::Excited;
      } else if (state == floater::CellState::Excited) {
        next = (s >= r.d1 && s <= r.d2) ? floater::CellState::Excited
                                        : floater::CellState::Refractory;
      }
      out.set(x, y, next);
    }
  }
  out.set_generation(in.generation() + 1);
  return out;
}

struct Force {
  double fx = 0, fy = 0, torque = 0;
};

// Unit vectors from atan2/cos/sin, double loop over every cell.
inline Force integral_force(const floater::Lattice& l) {
  Force f;
  const double cx = (l.width() - 1) / 2.0;
  const double cy = (l.height() - 1) / 2.0;
  for (int y = 0; y < l.height(); ++y) {
    for (int x = 0; x < l.width(); ++x) {
      double sx = 0, sy = 0;
      int n = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int xx = x + dx, yy = y + dy;
          if (xx < 0 || yy < 0 || xx >= l.width() || yy >= l.height()) continue;
          if (l.at(xx, yy) != floater::CellState::Excited) continue;
          const double a = std::atan2(dy, dx);
          sx += std::cos(a);
          sy += std::sin(a);
          ++n;
        }
      }
      if (n == 0) continue;
      const double lx = -sx / n, ly = -sy / n;
      f.fx += lx;
      f.fy += ly;
      f.torque += (x - cx) * ly - (y - cy) * lx;
    }
  }
  return f;
}

inline floater::Lattice random_lattice(std::mt19937_64& rng, int w, int h) {
  floater::Lattice l(w, h);
  std::uniform_int_distribution<int> d(0, 2);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) l.set(x, y, static_cast<floater::CellState>(d(rng)));
  }
  return l;
}

// Hand-written hysteresis counter over a distance series.
inline int cycles(const std::vector<double>& d) {
  const double lo = 0.25 * d.at(0), hi = 0.5 * d.at(0);
  int n = 0;
  int phase = 0;  // 0: waiting to get close, 1: waiting to get far
  for (double v : d) {
    if (phase == 0 && v < lo) phase = 1;
    if (phase == 1 && v > hi) {
      phase = 0;
      ++n;
    }
  }
  return n;
}

}  // namespace oracle

#endif  // FLOATER_TESTS_ORACLES_HPP
