#ifndef FLOATER_SIMULATION_HPP
#define FLOATER_SIMULATION_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "floater/automaton.hpp"
#include "floater/config.hpp"
#include "floater/kinetics.hpp"
#include "floater/lattice.hpp"
#include "floater/rng.hpp"
#include "floater/stimulus.hpp"

namespace floater {

/// One row of the trajectory log.
struct TrajectoryRecord {
  std::int64_t step = 0;
  Pose pose;
  Vec2 force = Vec2::Zero();  // body frame
  double torque = 0.0;
  std::int64_t excited = 0;
  std::int64_t refractory = 0;
  double dist_to_light = 0.0;

  friend bool operator==(const TrajectoryRecord& a, const TrajectoryRecord& b) {
    return a.step == b.step && a.pose.position == b.pose.position &&
           a.pose.heading == b.pose.heading && a.force == b.force && a.torque == b.torque &&
           a.excited == b.excited && a.refractory == b.refractory &&
           a.dist_to_light == b.dist_to_light;
  }
};

/// The floater: a mobile lattice driven by its own excitation.
///
/// Each step runs, in this fixed order:
///   1. light stimulus on the dark-side edge cells,
///   2. one synchronous automaton update,
///   3. integral force and torque of the new configuration,
///   4. pose integration, then clamping into the arena.
class Simulation {
 public:
  /// Validates `cfg`; throws ConfigError (a parse error for a bad rule).
  explicit Simulation(SimConfig cfg);

  void step();

  [[nodiscard]] std::int64_t step_count() const noexcept { return step_; }
  [[nodiscard]] const SimConfig& config() const noexcept { return cfg_; }
  [[nodiscard]] const Lattice& lattice() const noexcept { return lattice_; }
  [[nodiscard]] const Pose& pose() const noexcept { return pose_; }
  [[nodiscard]] const LightSource& light() const noexcept { return light_; }
  [[nodiscard]] const IntegralForce& last_force() const noexcept { return force_; }
  [[nodiscard]] const RuleParams& rule() const noexcept { return automaton_.rule(); }

  [[nodiscard]] TrajectoryRecord record() const;

  void set_light(const Vec2& position);
  void set_rule(const RuleParams& rule);
  /// Restarts from the initial state with a new seed; keeps the current
  /// light position and rule.
  void reset(std::uint64_t seed);

 private:
  void initialise();

  SimConfig cfg_;
  Automaton automaton_;
  StimulusConfig stimulus_;
  LightSource light_;
  RandomStream rng_;
  Lattice lattice_;
  Lattice scratch_;
  Pose pose_;
  IntegralForce force_;
  std::int64_t step_ = 0;
};

using StepObserver = std::function<void(const Simulation&)>;

/// Runs cfg.steps iterations. Records step 0, every record_every-th step and
/// the final step. `observer`, if set, sees the state after step 0 and after
/// every step.
[[nodiscard]] std::vector<TrajectoryRecord> run_simulation(const SimConfig& cfg,
                                                           const StepObserver& observer = {});

}  // namespace floater

#endif  // FLOATER_SIMULATION_HPP
