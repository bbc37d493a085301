#ifndef FLOATER_RULE_HPP
#define FLOATER_RULE_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace floater {

enum class CellState : std::uint8_t { Resting = 0, Excited = 1, Refractory = 2 };

/// Interval thresholds of a retained-excitation rule, written R(t1 t2 d1 d2).
///
/// A resting cell fires when its excited-neighbour count lies in
/// [excite_lo, excite_hi]; an excited cell stays excited while the count lies
/// in [retain_lo, retain_hi]. Digits run 0..9, so 9 encodes an interval that
/// can never hold (at most 8 neighbours) and an inverted interval is empty.
struct RuleParams {
  int excite_lo = 2;
  int excite_hi = 2;
  int retain_lo = 0;
  int retain_hi = 1;

  [[nodiscard]] constexpr bool excites(int sigma) const noexcept {
    return excite_lo <= sigma && sigma <= excite_hi;
  }
  [[nodiscard]] constexpr bool retains(int sigma) const noexcept {
    return retain_lo <= sigma && sigma <= retain_hi;
  }

  friend constexpr bool operator==(const RuleParams&, const RuleParams&) = default;
};

class RuleParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses a four-digit code such as "2201". Throws RuleParseError naming the
/// offending position.
RuleParams parse_rule(std::string_view code);

std::string format_rule(const RuleParams& rule);

/// The full transition table of one cell.
[[nodiscard]] constexpr CellState next_cell_state(CellState s, int sigma,
                                                  const RuleParams& rule) noexcept {
  switch (s) {
    case CellState::Resting:
      return rule.excites(sigma) ? CellState::Excited : CellState::Resting;
    case CellState::Excited:
      return rule.retains(sigma) ? CellState::Excited : CellState::Refractory;
    case CellState::Refractory:
      break;
  }
  return CellState::Resting;
}

/// Lookup form of next_cell_state: index [state * 9 + sigma].
using TransitionTable = std::array<std::uint8_t, 27>;

[[nodiscard]] constexpr TransitionTable make_transition_table(const RuleParams& rule) noexcept {
  TransitionTable table{};
  for (int s = 0; s < 3; ++s) {
    for (int sigma = 0; sigma <= 8; ++sigma) {
      table[static_cast<std::size_t>(s * 9 + sigma)] = static_cast<std::uint8_t>(
          next_cell_state(static_cast<CellState>(s), sigma, rule));
    }
  }
  return table;
}

}  // namespace floater

#endif  // FLOATER_RULE_HPP
