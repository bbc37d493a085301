#ifndef FLOATER_AUTOMATON_HPP
#define FLOATER_AUTOMATON_HPP

#include <cstdint>
#include <vector>

#include "floater/lattice.hpp"
#include "floater/rule.hpp"

namespace floater {

/// Number of Excited cells among the in-grid Moore neighbours of (x, y).
/// Neighbours outside the lattice count as Resting. Throws std::out_of_range.
int count_excited_neighbors(const Lattice& lattice, int x, int y);

/// One synchronous update; the result has generation + 1.
[[nodiscard]] Lattice step_lattice(const Lattice& lattice, const RuleParams& rule);

/// Reusable stepper for the simulation loop. Keeps a zero-padded excitation
/// mask so the inner loop needs no bounds checks.
class Automaton {
 public:
  explicit Automaton(const RuleParams& rule);

  [[nodiscard]] const RuleParams& rule() const noexcept { return rule_; }
  void set_rule(const RuleParams& rule);

  /// Writes the next generation of `src` into `dst` (resized as needed).
  /// `src` and `dst` must be distinct objects.
  void step(const Lattice& src, Lattice& dst);

 private:
  RuleParams rule_;
  TransitionTable table_;
  std::vector<std::uint8_t> mask_;
};

}  // namespace floater

#endif  // FLOATER_AUTOMATON_HPP
