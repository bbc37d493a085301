#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "floater/stimulus.hpp"

using namespace floater;
using doctest::Approx;

namespace {

std::set<CellIndex> as_set(const std::vector<CellIndex>& v) { return {v.begin(), v.end()}; }

LightSource light_at(double x, double y) {
  LightSource l;
  l.position = Vec2(x, y);
  return l;
}

}  // namespace

TEST_CASE("world_position_of_cell") {
  const Vec2 a = world_position_of_cell(Pose{}, 3, 3, 2, 1);
  CHECK(a.x() == Approx(1.0));
  CHECK(a.y() == Approx(0.0));
  const Vec2 b = world_position_of_cell(Pose{Vec2(10.0, 0.0), 0.0}, 3, 3, 2, 1);
  CHECK(b.x() == Approx(11.0));
  CHECK(b.y() == Approx(0.0));
  const Vec2 c = world_position_of_cell(Pose{Vec2::Zero(), std::numbers::pi / 2}, 3, 3, 2, 1);
  CHECK(c.x() == Approx(0.0));
  CHECK(c.y() == Approx(1.0));
  CHECK_THROWS_AS((void)world_position_of_cell(Pose{}, 3, 3, 3, 0), std::out_of_range);
}

TEST_CASE("perimeter cells are listed row-major") {
  const auto p = perimeter_cells(4, 3);
  const std::vector<CellIndex> expected{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1},
                                        {3, 1}, {0, 2}, {1, 2}, {2, 2}, {3, 2}};
  CHECK(p == expected);
}

TEST_CASE("eligible_boundary_cells examples") {
  SUBCASE("3x3 lattice, light far east") {
    const auto got = as_set(eligible_boundary_cells(Pose{}, 3, 3, light_at(1000.0, 0.0)));
    const std::set<CellIndex> expected{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}};
    CHECK(got == expected);
  }
  SUBCASE("light at the centre makes the whole perimeter eligible") {
    CHECK(eligible_boundary_cells(Pose{}, 5, 4, light_at(0.0, 0.0)).size() ==
          perimeter_cells(5, 4).size());
  }
  SUBCASE("distant light on the +x axis gives a set symmetric about the x axis") {
    const int n = 11;
    const auto got = as_set(eligible_boundary_cells(Pose{}, n, n, light_at(1e6, 0.0)));
    REQUIRE(!got.empty());
    for (const auto& c : got) CHECK(got.count({c.x, n - 1 - c.y}) == 1);
  }
  SUBCASE("only cells farther than the centre are chosen") {
    const Pose pose{Vec2(3.0, -2.0), 0.7};
    const auto light = light_at(-40.0, 25.0);
    const double centre = (pose.position - light.position).norm();
    const auto eligible = as_set(eligible_boundary_cells(pose, 9, 7, light));
    for (const auto& c : perimeter_cells(9, 7)) {
      const double d = (world_position_of_cell(pose, 9, 7, c.x, c.y) - light.position).norm();
      CHECK((eligible.count(c) == 1) == (d > centre));
    }
  }
}

TEST_CASE("eligibility is invariant under joint translation") {
  const Pose pose{Vec2(1.0, 2.0), -0.4};
  const auto light = light_at(50.0, -20.0);
  const auto base = eligible_boundary_cells(pose, 12, 9, light);
  for (const Vec2 shift : {Vec2(100.0, 0.0), Vec2(-37.0, 512.0), Vec2(4096.0, -2048.0)}) {
    const Pose moved{pose.position + shift, pose.heading};
    CHECK(eligible_boundary_cells(moved, 12, 9, light_at(light.position.x() + shift.x(),
                                                         light.position.y() + shift.y())) == base);
  }
}

TEST_CASE("StimulusConfig bounds") {
  CHECK(StimulusConfig{}.p_excite() == 0.15);
  CHECK_NOTHROW((void)StimulusConfig(0.0));
  CHECK_NOTHROW((void)StimulusConfig(1.0));
  CHECK_THROWS_AS((void)StimulusConfig(-0.01), std::invalid_argument);
  CHECK_THROWS_AS((void)StimulusConfig(1.5), std::invalid_argument);
  CHECK_THROWS_AS((void)StimulusConfig(NAN), std::invalid_argument);
}

TEST_CASE("apply_light_stimulus") {
  const auto light = light_at(100.0, 0.0);
  SUBCASE("p = 0 leaves the lattice unchanged") {
    Lattice l(6, 6);
    l.set(0, 2, CellState::Refractory);
    const Lattice before = l;
    RandomStream rng(1);
    apply_light_stimulus(l, Pose{}, light, StimulusConfig(0.0), rng);
    CHECK(l == before);
  }
  SUBCASE("p = 1 fires every eligible resting perimeter cell and nothing else") {
    Lattice l(6, 6);
    l.set(0, 2, CellState::Refractory);
    l.set(0, 3, CellState::Excited);
    l.set(2, 2, CellState::Resting);
    RandomStream rng(1);
    apply_light_stimulus(l, Pose{}, light, StimulusConfig(1.0), rng);
    const auto eligible = as_set(eligible_boundary_cells(Pose{}, 6, 6, light));
    for (int y = 0; y < 6; ++y) {
      for (int x = 0; x < 6; ++x) {
        if (x == 0 && y == 2) {
          CHECK(l(x, y) == CellState::Refractory);
        } else if (eligible.count({x, y})) {
          CHECK(l(x, y) == CellState::Excited);
        } else {
          CHECK(l(x, y) == CellState::Resting);
        }
      }
    }
  }
  SUBCASE("interior cells are never touched") {
    RandomStream rng(11);
    Lattice l(8, 8);
    for (int i = 0; i < 200; ++i) {
      const Pose pose{Vec2::Zero(), 0.031 * i};
      apply_light_stimulus(l, pose, light, StimulusConfig(0.5), rng);
      for (int y = 1; y < 7; ++y) {
        for (int x = 1; x < 7; ++x) REQUIRE(l(x, y) == CellState::Resting);
      }
    }
  }
  SUBCASE("same seed, same result") {
    Lattice a(30, 20), b(30, 20);
    RandomStream ra(77), rb(77);
    apply_light_stimulus(a, Pose{}, light, StimulusConfig(0.15), ra);
    apply_light_stimulus(b, Pose{}, light, StimulusConfig(0.15), rb);
    CHECK(a == b);
  }
}

TEST_CASE("edge excitation frequency matches p = 0.15") {
  const auto light = light_at(1000.0, 0.0);
  const auto eligible = eligible_boundary_cells(Pose{}, 3, 3, light);
  RandomStream rng(2024);
  const int trials = 100000;
  std::vector<int> hits(eligible.size(), 0);
  for (int t = 0; t < trials; ++t) {
    Lattice l(3, 3);
    apply_light_stimulus(l, Pose{}, light, StimulusConfig(0.15), rng);
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      hits[i] += l(eligible[i].x, eligible[i].y) == CellState::Excited;
    }
  }
  for (const int h : hits) CHECK(std::abs(static_cast<double>(h) / trials - 0.15) <= 0.005);
}

TEST_CASE("RandomStream follows the standard mt19937_64 sequence") {
  RandomStream rng(5489u);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next_u64();
  CHECK(v == 9981545732273789042ULL);
  RandomStream u(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.next_unit();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
  }
}
