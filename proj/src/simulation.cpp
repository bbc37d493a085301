#include "floater/simulation.hpp"

#include <algorithm>

namespace floater {

Simulation::Simulation(SimConfig cfg)
    : cfg_((cfg.validate(), std::move(cfg))),
      automaton_(parse_rule(cfg_.rule)),
      stimulus_(cfg_.p_excite),
      rng_(cfg_.seed) {
  light_.position = cfg_.light;
  light_.radius = cfg_.light_radius;
  initialise();
}

void Simulation::initialise() {
  rng_ = RandomStream(cfg_.seed);
  lattice_ = Lattice(cfg_.width, cfg_.height);
  scratch_ = Lattice(cfg_.width, cfg_.height);
  if (cfg_.seed_cell) lattice_.set(cfg_.width / 2, cfg_.height / 2, CellState::Excited);
  pose_ = cfg_.initial_pose;
  pose_.heading = wrap_angle(pose_.heading);
  force_ = integral_force(lattice_);
  step_ = 0;
}

void Simulation::step() {
  apply_light_stimulus(lattice_, pose_, light_, stimulus_, rng_);
  automaton_.step(lattice_, scratch_);
  std::swap(lattice_, scratch_);
  force_ = integral_force(lattice_);
  pose_ = integrate_pose(pose_, force_, cfg_.gains);
  const double bound = cfg_.arena_halfwidth;
  pose_.position = pose_.position.cwiseMax(-bound).cwiseMin(bound);
  ++step_;
}

TrajectoryRecord Simulation::record() const {
  TrajectoryRecord r;
  r.step = step_;
  r.pose = pose_;
  r.force = force_.force;
  r.torque = force_.torque;
  r.excited = static_cast<std::int64_t>(lattice_.count(CellState::Excited));
  r.refractory = static_cast<std::int64_t>(lattice_.count(CellState::Refractory));
  r.dist_to_light = (pose_.position - light_.position).norm();
  return r;
}

void Simulation::set_light(const Vec2& position) { light_.position = position; }

void Simulation::set_rule(const RuleParams& rule) {
  automaton_.set_rule(rule);
  cfg_.rule = format_rule(rule);
}

void Simulation::reset(std::uint64_t seed) {
  cfg_.seed = seed;
  initialise();
}

std::vector<TrajectoryRecord> run_simulation(const SimConfig& cfg, const StepObserver& observer) {
  Simulation sim(cfg);
  std::vector<TrajectoryRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.steps / cfg.record_every + 2));
  records.push_back(sim.record());
  if (observer) observer(sim);
  for (std::int64_t i = 1; i <= cfg.steps; ++i) {
    sim.step();
    if (i % cfg.record_every == 0 || i == cfg.steps) records.push_back(sim.record());
    if (observer) observer(sim);
  }
  return records;
}

}  // namespace floater
