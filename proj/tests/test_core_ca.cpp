#include <doctest.h>

#include <chrono>
#include <random>

#include "floater/automaton.hpp"
#include "floater/lattice.hpp"
#include "floater/rule.hpp"
#include "support/oracles.hpp"

using namespace floater;

namespace {

Lattice single_centre(int n) {
  Lattice l(n, n);
  l.set(n / 2, n / 2, CellState::Excited);
  return l;
}

RuleParams random_rule(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> digit(0, 9);
  return {digit(rng), digit(rng), digit(rng), digit(rng)};
}

}  // namespace

TEST_CASE("parse_rule maps digits positionally") {
  CHECK(parse_rule("2201") == RuleParams{2, 2, 0, 1});
  CHECK(parse_rule("1899") == RuleParams{1, 8, 9, 9});
  CHECK(parse_rule("2246") == RuleParams{2, 2, 4, 6});
}

TEST_CASE("parse_rule rejects bad codes and names the position") {
  CHECK_THROWS_AS((void)parse_rule("220"), RuleParseError);
  CHECK_THROWS_AS((void)parse_rule("22011"), RuleParseError);
  CHECK_THROWS_AS((void)parse_rule(""), RuleParseError);
  try {
    (void)parse_rule("99x1");
    FAIL("expected a parse error");
  } catch (const RuleParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("position 2") != std::string::npos);
    CHECK(msg.find("'x'") != std::string::npos);
  }
}

TEST_CASE("every rule code round-trips through format_rule") {
  for (int code = 0; code < 10000; ++code) {
    const RuleParams r{code / 1000, code / 100 % 10, code / 10 % 10, code % 10};
    REQUIRE(parse_rule(format_rule(r)) == r);
  }
}

TEST_CASE("next_cell_state transition table") {
  const auto r2201 = parse_rule("2201");
  const auto r1899 = parse_rule("1899");
  CHECK(next_cell_state(CellState::Resting, 2, r2201) == CellState::Excited);
  CHECK(next_cell_state(CellState::Resting, 1, r2201) == CellState::Resting);
  CHECK(next_cell_state(CellState::Resting, 3, r2201) == CellState::Resting);
  CHECK(next_cell_state(CellState::Excited, 0, r2201) == CellState::Excited);
  CHECK(next_cell_state(CellState::Excited, 2, r2201) == CellState::Refractory);
  CHECK(next_cell_state(CellState::Excited, 1, r1899) == CellState::Refractory);
  CHECK(next_cell_state(CellState::Resting, 8, r1899) == CellState::Excited);
  for (int code = 0; code < 10000; code += 37) {
    const RuleParams r{code / 1000, code / 100 % 10, code / 10 % 10, code % 10};
    for (int s = 0; s <= 8; ++s) CHECK(next_cell_state(CellState::Refractory, s, r) == CellState::Resting);
  }
}

TEST_CASE("inverted intervals never fire") {
  const RuleParams r{5, 3, 7, 2};
  for (int s = 0; s <= 8; ++s) {
    CHECK(next_cell_state(CellState::Resting, s, r) == CellState::Resting);
    CHECK(next_cell_state(CellState::Excited, s, r) == CellState::Refractory);
  }
}

TEST_CASE("count_excited_neighbors") {
  Lattice l(5, 5);
  CHECK(count_excited_neighbors(l, 2, 2) == 0);
  l.fill(CellState::Excited);
  CHECK(count_excited_neighbors(l, 2, 2) == 8);
  CHECK(count_excited_neighbors(l, 0, 0) == 3);
  CHECK(count_excited_neighbors(l, 4, 2) == 5);
  l.fill(CellState::Refractory);
  CHECK(count_excited_neighbors(l, 2, 2) == 0);
  CHECK_THROWS_AS((void)count_excited_neighbors(l, 5, 0), std::out_of_range);
  CHECK_THROWS_AS((void)count_excited_neighbors(l, 0, -1), std::out_of_range);
}

TEST_CASE("step_lattice hand-simulated examples") {
  SUBCASE("quiescent lattice stays quiescent") {
    const Lattice l(7, 4);
    for (const char* code : {"2201", "1899", "0099", "0000"}) {
      // Rules with excite_lo == 0 fire spontaneously, so only check the rest.
      const auto r = parse_rule(code);
      if (r.excite_lo == 0) continue;
      const auto next = step_lattice(l, r);
      CHECK(next.count(CellState::Resting) == l.size());
      CHECK(next.generation() == 1);
    }
  }
  SUBCASE("R(1899): single excitation becomes a ring") {
    const auto next = step_lattice(single_centre(5), parse_rule("1899"));
    const auto expected = Lattice::from_text(
        "00000\n"
        "01110\n"
        "01210\n"
        "01110\n"
        "00000\n");
    CHECK(next == expected);
  }
  SUBCASE("R(2201): single excitation is retained unchanged") {
    const auto l = single_centre(5);
    const auto next = step_lattice(l, parse_rule("2201"));
    CHECK(next == l);
    CHECK(next.generation() == l.generation() + 1);
  }
}

TEST_CASE("step_lattice matches the naive oracle on random lattices") {
  std::mt19937_64 rng(20240611);
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    const auto l = oracle::random_lattice(rng, 20, 20);
    const auto r = random_rule(rng);
    const auto got = step_lattice(l, r);
    const auto want = oracle::step(l, {r.excite_lo, r.excite_hi, r.retain_lo, r.retain_hi});
    REQUIRE_MESSAGE(got == want, "rule " << format_rule(r) << " trial " << trial);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 5.0);
}

TEST_CASE("step invariants on random lattices") {
  std::mt19937_64 rng(7);
  Automaton automaton(parse_rule("2201"));
  Lattice next;
  for (int trial = 0; trial < 200; ++trial) {
    const auto l = oracle::random_lattice(rng, 13, 9);
    const auto r = random_rule(rng);
    automaton.set_rule(r);
    automaton.step(l, next);
    REQUIRE(next.width() == l.width());
    REQUIRE(next.height() == l.height());
    for (int y = 0; y < l.height(); ++y) {
      for (int x = 0; x < l.width(); ++x) {
        if (l(x, y) == CellState::Refractory) REQUIRE(next(x, y) == CellState::Resting);
        if (l(x, y) == CellState::Resting && count_excited_neighbors(l, x, y) == 0 &&
            r.excite_lo >= 1) {
          REQUIRE(next(x, y) == CellState::Resting);
        }
      }
    }
    // Purity: same input, same output.
    REQUIRE(step_lattice(l, r) == next);
  }
}

TEST_CASE("lattice text format") {
  const std::string text = "012\n210\n";
  const auto l = Lattice::from_text(text);
  CHECK(l.width() == 3);
  CHECK(l.height() == 2);
  CHECK(l.at(1, 0) == CellState::Excited);
  CHECK(l.at(0, 1) == CellState::Refractory);
  CHECK(l.to_text() == text);
  CHECK_THROWS_AS((void)Lattice::from_text("012\n21\n"), std::invalid_argument);
  CHECK_THROWS_AS((void)Lattice::from_text("013\n"), std::invalid_argument);
  CHECK_THROWS_AS((void)Lattice::from_text("012"), std::invalid_argument);
  CHECK_THROWS_AS((void)Lattice(0, 3), std::invalid_argument);
}
