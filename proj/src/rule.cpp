#include "floater/rule.hpp"

namespace floater {

RuleParams parse_rule(std::string_view code) {
  if (code.size() != 4) {
    throw RuleParseError("rule code must have exactly 4 digits, got " +
                         std::to_string(code.size()) + " characters: '" + std::string(code) +
                         "'");
  }
  std::array<int, 4> digits{};
  for (std::size_t i = 0; i < 4; ++i) {
    const char c = code[i];
    if (c < '0' || c > '9') {
      throw RuleParseError("rule code '" + std::string(code) + "': character '" +
                           std::string(1, c) + "' at position " + std::to_string(i) +
                           " is not a decimal digit");
    }
    digits[i] = c - '0';
  }
  return RuleParams{digits[0], digits[1], digits[2], digits[3]};
}

std::string format_rule(const RuleParams& rule) {
  std::string out(4, '0');
  out[0] = static_cast<char>('0' + rule.excite_lo);
  out[1] = static_cast<char>('0' + rule.excite_hi);
  out[2] = static_cast<char>('0' + rule.retain_lo);
  out[3] = static_cast<char>('0' + rule.retain_hi);
  return out;
}

}  // namespace floater
