#ifndef FLOATER_KINETICS_HPP
#define FLOATER_KINETICS_HPP

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "floater/lattice.hpp"

namespace floater {

template <typename Scalar>
using Vec2T = Eigen::Matrix<Scalar, 2, 1>;
using Vec2 = Vec2T<double>;

/// Net body-frame force and z-torque produced by one lattice configuration.
template <typename Scalar>
struct IntegralForceT {
  Vec2T<Scalar> force = Vec2T<Scalar>::Zero();
  Scalar torque = Scalar(0);
};
using IntegralForce = IntegralForceT<double>;

/// World position of the lattice centre and its heading in (-pi, pi].
template <typename Scalar>
struct PoseT {
  Vec2T<Scalar> position = Vec2T<Scalar>::Zero();
  Scalar heading = Scalar(0);
};
using Pose = PoseT<double>;

template <typename Scalar>
struct MotionGainsT {
  Scalar k_translate = Scalar(0.1);
  Scalar k_rotate = Scalar(5e-6);

  void validate() const {
    if (!(std::isfinite(k_translate) && k_translate > 0) ||
        !(std::isfinite(k_rotate) && k_rotate > 0)) {
      throw std::invalid_argument("motion gains must be finite and strictly positive");
    }
  }
};
using MotionGains = MotionGainsT<double>;

template <typename Scalar>
[[nodiscard]] Scalar wrap_angle(Scalar a) {
  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  a = std::remainder(a, two_pi);
  if (a <= -std::numbers::pi_v<Scalar>) a += two_pi;
  return a;
}

template <typename Scalar>
[[nodiscard]] Eigen::Matrix<Scalar, 2, 2> rotation(Scalar angle) {
  const Scalar c = std::cos(angle);
  const Scalar s = std::sin(angle);
  Eigen::Matrix<Scalar, 2, 2> r;
  r << c, -s, s, c;
  return r;
}

/// z-component of a x b.
template <typename Scalar>
[[nodiscard]] Scalar cross_z(const Vec2T<Scalar>& a, const Vec2T<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Body-frame offset of cell (x, y) from the lattice's geometric centre.
/// +x is increasing column, +y is increasing row; one cell is one unit.
template <typename Scalar = double>
[[nodiscard]] Vec2T<Scalar> cell_offset(int width, int height, int x, int y) {
  return {Scalar(x) - Scalar(width - 1) / Scalar(2), Scalar(y) - Scalar(height - 1) / Scalar(2)};
}

namespace detail {

// Sum of unit vectors toward the excited members of a Moore neighbourhood.
// Arguments are 0/1 flags named by compass direction (north = +y). The
// grouping makes the result exactly antisymmetric under east/west mirroring.
template <typename Scalar>
[[nodiscard]] inline Vec2T<Scalar> neighbour_pull(int n, int ne, int e, int se, int s, int sw,
                                                  int w, int nw) {
  constexpr Scalar diag = std::numbers::sqrt2_v<Scalar> / Scalar(2);
  const Scalar px = Scalar(e - w) + diag * Scalar((ne + se) - (nw + sw));
  const Scalar py = Scalar(n - s) + diag * Scalar((ne + nw) - (se + sw));
  return {px, py};
}

}  // namespace detail

/// Local vector of cell (x, y): the negated mean of unit vectors pointing at
/// its excited in-grid neighbours, so it points toward the less excited side.
/// Zero when no neighbour is excited. Throws std::out_of_range.
template <typename Scalar = double>
[[nodiscard]] Vec2T<Scalar> local_force(const Lattice& lattice, int x, int y) {
  if (!lattice.contains(x, y)) {
    throw std::out_of_range("cell (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") outside lattice");
  }
  auto ex = [&](int dx, int dy) {
    return lattice.contains(x + dx, y + dy) && lattice(x + dx, y + dy) == CellState::Excited ? 1
                                                                                             : 0;
  };
  const int n = ex(0, 1), ne = ex(1, 1), e = ex(1, 0), se = ex(1, -1);
  const int s = ex(0, -1), sw = ex(-1, -1), w = ex(-1, 0), nw = ex(-1, 1);
  const int count = n + ne + e + se + s + sw + w + nw;
  if (count == 0) return Vec2T<Scalar>::Zero();
  return -detail::neighbour_pull<Scalar>(n, ne, e, se, s, sw, w, nw) / Scalar(count);
}

namespace detail {

// Integer decomposition of the negated neighbour pull for every 8-bit Moore
// neighbourhood code: pull = -(a + b * sqrt(2)/2), mean = pull / count.
// Bit order: n, ne, e, se, s, sw, w, nw (bit 0 = north).
struct PullCode {
  int ax = 0, bx = 0, ay = 0, by = 0;
  int count = 0;
};

inline const std::array<PullCode, 256>& pull_codes() {
  static const auto table = [] {
    std::array<PullCode, 256> t{};
    for (int code = 0; code < 256; ++code) {
      auto bit = [code](int i) { return (code >> i) & 1; };
      const int n = bit(0), ne = bit(1), e = bit(2), se = bit(3);
      const int s = bit(4), sw = bit(5), w = bit(6), nw = bit(7);
      auto& c = t[static_cast<std::size_t>(code)];
      c.ax = w - e;
      c.bx = (nw + sw) - (ne + se);
      c.ay = s - n;
      c.by = (se + sw) - (ne + nw);
      c.count = std::popcount(static_cast<unsigned>(code));
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// Sum of local vectors over all cells, and their torque about the lattice
/// centre. Contributions are accumulated exactly in integers, grouped by
/// excited-neighbour count, so the result does not depend on cell order:
/// uniform excitation gives exactly zero and mirrored lattices give exactly
/// negated components.
template <typename Scalar = double>
[[nodiscard]] IntegralForceT<Scalar> integral_force(const Lattice& lattice) {
  const int w = lattice.width();
  const int h = lattice.height();
  const auto pw = static_cast<std::size_t>(w + 2);
  std::vector<std::uint8_t> mask(pw * static_cast<std::size_t>(h + 2), 0);
  const auto cells = lattice.cells();
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = cells.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w);
    std::uint8_t* m = mask.data() + static_cast<std::size_t>(y + 1) * pw + 1;
    for (int x = 0; x < w; ++x) m[x] = row[x] == 1 ? 1 : 0;
  }

  // Per neighbour count k: rational and sqrt(2)/2 parts of force and of
  // twice the torque (cell offsets doubled to stay integral).
  struct Sums {
    std::int64_t ax = 0, bx = 0, ay = 0, by = 0, ta = 0, tb = 0;
  };
  std::array<Sums, 9> sums{};
  const auto& codes = detail::pull_codes();
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* south = mask.data() + static_cast<std::size_t>(y) * pw;
    const std::uint8_t* mid = south + pw;
    const std::uint8_t* north = mid + pw;
    const std::int64_t ry2 = 2 * y - (h - 1);
    for (int x = 0; x < w; ++x) {
      const unsigned code = static_cast<unsigned>(north[x + 1]) |
                            static_cast<unsigned>(north[x + 2]) << 1 |
                            static_cast<unsigned>(mid[x + 2]) << 2 |
                            static_cast<unsigned>(south[x + 2]) << 3 |
                            static_cast<unsigned>(south[x + 1]) << 4 |
                            static_cast<unsigned>(south[x]) << 5 |
                            static_cast<unsigned>(mid[x]) << 6 |
                            static_cast<unsigned>(north[x]) << 7;
      if (code == 0) continue;
      const auto& c = codes[code];
      const std::int64_t rx2 = 2 * x - (w - 1);
      auto& s = sums[static_cast<std::size_t>(c.count)];
      s.ax += c.ax;
      s.bx += c.bx;
      s.ay += c.ay;
      s.by += c.by;
      s.ta += rx2 * c.ay - ry2 * c.ax;
      s.tb += rx2 * c.by - ry2 * c.bx;
    }
  }

  constexpr Scalar diag = std::numbers::sqrt2_v<Scalar> / Scalar(2);
  IntegralForceT<Scalar> total;
  for (int k = 1; k <= 8; ++k) {
    const auto& s = sums[static_cast<std::size_t>(k)];
    const Scalar inv = Scalar(1) / Scalar(k);
    total.force.x() += (Scalar(s.ax) + diag * Scalar(s.bx)) * inv;
    total.force.y() += (Scalar(s.ay) + diag * Scalar(s.by)) * inv;
    total.torque += (Scalar(s.ta) + diag * Scalar(s.tb)) * inv / Scalar(2);
  }
  return total;
}

/// Explicit first-order update: rotate by k_rotate * torque, then translate
/// by k_translate * force expressed in the world frame of the new heading.
template <typename Scalar>
[[nodiscard]] PoseT<Scalar> integrate_pose(const PoseT<Scalar>& pose,
                                           const IntegralForceT<Scalar>& f,
                                           const MotionGainsT<Scalar>& gains) {
  PoseT<Scalar> next;
  next.heading = wrap_angle(pose.heading + gains.k_rotate * f.torque);
  next.position = pose.position + rotation(next.heading) * (gains.k_translate * f.force);
  return next;
}

}  // namespace floater

#endif  // FLOATER_KINETICS_HPP
