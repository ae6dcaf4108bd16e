#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swarmfold/dataset.hpp"
#include "swarmfold/geometry.hpp"
#include "swarmfold/rng.hpp"

namespace swarmfold {

// Parameters shared by every scenario of the augmented Vicsek model.
struct SimParams {
  int agent_count = 50;
  int step_count = 150;  // number of frames T
  double half_width = 8.0;
  double half_height = 5.0;
  double time_step = 0.05;
  double interaction_radius = 1.0;
  double speed_jitter = 0.01;  // per-agent, per-step speed noise bound
  double base_speed = 0.05;
  double fast_speed = 0.1;       // speed-switch middle phase
  double calm_noise = 0.01;      // heading noise bound outside the perturbed phase
  double agitated_noise = 0.2;   // noise-switch middle phase
  // Apply each neighbour's rotation inside the alignment average (literal
  // rule). When false the rotation only steers the agent's own motion.
  bool rotate_alignment = true;
  // Draw the speed jitter once per agent instead of once per agent and step.
  bool fixed_speed_jitter = true;
  std::uint64_t seed = 1;
};

// Inputs for the update from frame t to t+1.
struct StepSchedule {
  double base_speed = 0.05;
  double noise_low = -0.01;
  double noise_high = 0.01;
  // One rotation per agent; empty means identity for everyone.
  std::vector<Mat2> rotations;
};

struct Schedule {
  std::string name;
  SimParams params;
  // steps[t - 1] drives step t, for t = 1 .. T-1.
  std::vector<StepSchedule> steps;
  std::vector<int> phase_starts;

  const StepSchedule& at(int t) const { return steps.at(static_cast<std::size_t>(t - 1)); }
  Boundary boundary() const { return {params.half_width, params.half_height, true}; }
  void validate() const;
};

struct AgentState {
  Vec2 position;   // wrapped into the periodic box
  Vec2 unwrapped;  // accumulated raw displacement
  double heading = 0.0;
  double speed_offset = 0.0;  // per-agent speed jitter when it is held fixed
};

// Agents within `radius` of each agent (self included), by minimum-image
// distance on periodic boundaries. Lists are ascending.
std::vector<std::vector<int>> neighbors_within(const Configuration& config, double radius,
                                               const Boundary& boundary);

// One update of the augmented Vicsek rule at step t.
std::vector<AgentState> step(std::span<const AgentState> states, const Schedule& schedule,
                             int t, Rng& rng);

SimParams speed_switch_defaults();
SimParams noise_switch_defaults();
SimParams split_rejoin_defaults();

// Which sigmoid argument drives the split/rejoin reference path.
enum class SigmoidArgument { normalized, literal };

Schedule scenario_speed_switch(const SimParams& params = speed_switch_defaults());
Schedule scenario_noise_switch(const SimParams& params = noise_switch_defaults());
Schedule scenario_split_rejoin(const SimParams& params = split_rejoin_defaults(),
                               SigmoidArgument argument = SigmoidArgument::normalized);

// Defaults for a scenario selected by its CLI name.
SimParams scenario_defaults(std::string_view name);
Schedule make_scenario(std::string_view name, const SimParams& params,
                       SigmoidArgument argument = SigmoidArgument::normalized);

// Reference path of the upper subgroup, t = 1..T.
double split_path_x(int t, int frame_count);
double split_path_y(int t, int frame_count, SigmoidArgument argument);
// Tangent angle between t-1 and t; zero at t = 1.
double split_rotation_angle(int t, int frame_count, SigmoidArgument argument);

std::vector<AgentState> initial_states(const SimParams& params, Rng& rng);

TrajectoryDataset simulate(const Schedule& schedule, std::uint64_t seed);
inline TrajectoryDataset simulate(const Schedule& schedule) {
  return simulate(schedule, schedule.params.seed);
}

}  // namespace swarmfold
