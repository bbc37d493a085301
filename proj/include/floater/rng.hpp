#ifndef FLOATER_RNG_HPP
#define FLOATER_RNG_HPP

#include <cstdint>
#include <random>

namespace floater {

/// Deterministic random stream used by the simulator.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the C++
/// standard (the 10000th draw from the default seed is 9981545732273789042).
/// Uniform doubles are formed from the top 53 bits by hand because the
/// standard distributions are implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace floater

#endif  // FLOATER_RNG_HPP
