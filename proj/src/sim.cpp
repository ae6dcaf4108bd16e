#include "swarmfold/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swarmfold/error.hpp"
#include "swarmfold/kdtree.hpp"

namespace swarmfold {

namespace {

constexpr int kPhaseStart = 50;
constexpr int kPhaseEnd = 100;

[[noreturn]] void fail(const std::string& message) { throw Error("sim", message); }

double sigmoid(double u) { return 1.0 / (1.0 + std::exp(-u)); }

void require_three_phases(const SimParams& p) {
  if (p.step_count < kPhaseEnd) {
    fail("scenario needs at least " + std::to_string(kPhaseEnd) + " steps, got " +
         std::to_string(p.step_count));
  }
}

Schedule base_schedule(std::string name, const SimParams& p) {
  Schedule s;
  s.name = std::move(name);
  s.params = p;
  s.steps.resize(p.step_count > 1 ? static_cast<std::size_t>(p.step_count - 1) : 0);
  for (auto& st : s.steps) {
    st.base_speed = p.base_speed;
    st.noise_low = -p.calm_noise;
    st.noise_high = p.calm_noise;
  }
  return s;
}

}  // namespace

void Schedule::validate() const {
  const SimParams& p = params;
  if (p.agent_count < 1) fail("agent_count must be >= 1");
  if (p.step_count < 2) fail("step_count must be >= 2");
  if (!(p.half_width > 0.0) || !(p.half_height > 0.0)) fail("domain half sizes must be positive");
  if (!(p.time_step > 0.0)) fail("time_step must be positive");
  if (!(p.interaction_radius > 0.0)) fail("interaction_radius must be positive");
  if (!(p.speed_jitter >= 0.0)) fail("speed_jitter must be non-negative");
  if (steps.size() != static_cast<std::size_t>(p.step_count - 1)) {
    fail("schedule has " + std::to_string(steps.size()) + " steps, expected " +
         std::to_string(p.step_count - 1));
  }
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const StepSchedule& st = steps[k];
    const std::string at = "step " + std::to_string(k + 1) + ": ";
    if (!(st.noise_low <= st.noise_high)) fail(at + "noise bounds out of order");
    if (!st.rotations.empty()) {
      if (st.rotations.size() != static_cast<std::size_t>(p.agent_count)) {
        fail(at + "rotation schedule size does not match agent_count");
      }
      for (const Mat2& r : st.rotations) {
        if (!is_rotation(r)) fail(at + "rotation matrix is not a proper rotation");
      }
    }
  }
}

std::vector<std::vector<int>> neighbors_within(const Configuration& config, double radius,
                                               const Boundary& boundary) {
  if (!(radius > 0.0)) fail("neighbor radius must be positive");
  const KdTree tree(config);
  const double r2 = radius * radius;
  // slightly generous candidate search; membership is decided by the
  // symmetric minimum-image predicate below
  const double search = radius * (1.0 + 1e-9) + 1e-12;
  std::vector<std::vector<int>> result(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    std::vector<int> candidates;
    if (boundary.periodic) {
      const double px = 2.0 * boundary.half_width, py = 2.0 * boundary.half_height;
      for (int sx = -1; sx <= 1; ++sx) {
        for (int sy = -1; sy <= 1; ++sy) {
          const Vec2 q = config[i] + Vec2{sx * px, sy * py};
          auto hits = tree.within(q, search);
          candidates.insert(candidates.end(), hits.begin(), hits.end());
        }
      }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    } else {
      candidates = tree.within(config[i], search);
    }
    auto& out = result[i];
    for (int j : candidates) {
      const Vec2 d = boundary.minimum_image(config[j] - config[i]);
      if (static_cast<std::size_t>(j) == i || squared_norm(d) <= r2) out.push_back(j);
    }
  }
  return result;
}

std::vector<AgentState> step(std::span<const AgentState> states, const Schedule& schedule, int t,
                             Rng& rng) {
  const SimParams& p = schedule.params;
  const StepSchedule& st = schedule.at(t);
  const Boundary boundary = schedule.boundary();
  const std::size_t n = states.size();

  Configuration positions(n);
  std::vector<Vec2> directions(n), aligning(n);
  for (std::size_t i = 0; i < n; ++i) {
    positions[i] = states[i].position;
    const Mat2 r = st.rotations.empty() ? Mat2::identity() : st.rotations[i];
    directions[i] = r * unit(states[i].heading);
    aligning[i] = p.rotate_alignment ? directions[i] : unit(states[i].heading);
  }
  const auto neighbors = neighbors_within(positions, p.interaction_radius, boundary);

  std::vector<AgentState> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 mean{};
    for (int j : neighbors[i]) mean += aligning[static_cast<std::size_t>(j)];
    mean /= static_cast<double>(neighbors[i].size());

    const double jitter = rng.uniform(-p.speed_jitter, p.speed_jitter);
    const double speed = st.base_speed + (p.fixed_speed_jitter ? states[i].speed_offset : jitter);
    const double noise = rng.uniform(st.noise_low, st.noise_high);

    // arg(0) is undefined: keep the previous heading
    const double aligned =
        (mean.x == 0.0 && mean.y == 0.0) ? states[i].heading : std::atan2(mean.y, mean.x);

    next[i].unwrapped = states[i].unwrapped + directions[i] * (speed * p.time_step);
    next[i].position = boundary.wrap(next[i].unwrapped);
    next[i].heading = aligned + noise;
    next[i].speed_offset = states[i].speed_offset;
  }
  return next;
}

SimParams speed_switch_defaults() {
  SimParams p;
  p.agent_count = 50;
  p.step_count = 150;
  p.half_width = 8.0;
  p.half_height = 5.0;
  return p;
}

SimParams noise_switch_defaults() {
  SimParams p;
  p.agent_count = 50;
  p.step_count = 150;
  p.half_width = 6.0;
  p.half_height = 6.0;
  return p;
}

SimParams split_rejoin_defaults() {
  SimParams p;
  p.agent_count = 50;
  p.step_count = 220;
  p.half_width = 6.0;
  p.half_height = 6.0;
  return p;
}

Schedule scenario_speed_switch(const SimParams& params) {
  require_three_phases(params);
  Schedule s = base_schedule("speed-switch", params);
  for (int t = kPhaseStart; t < kPhaseEnd && t < params.step_count; ++t) {
    s.steps[static_cast<std::size_t>(t - 1)].base_speed = params.fast_speed;
  }
  s.phase_starts = {kPhaseStart, kPhaseEnd};
  return s;
}

Schedule scenario_noise_switch(const SimParams& params) {
  require_three_phases(params);
  Schedule s = base_schedule("noise-switch", params);
  for (int t = kPhaseStart; t < kPhaseEnd && t < params.step_count; ++t) {
    auto& st = s.steps[static_cast<std::size_t>(t - 1)];
    st.noise_low = -params.agitated_noise;
    st.noise_high = params.agitated_noise;
  }
  s.phase_starts = {kPhaseStart, kPhaseEnd};
  return s;
}

double split_path_x(int t, int frame_count) {
  return 6.0 * (2.0 * t - frame_count) / frame_count;
}

double split_path_y(int t, int frame_count, SigmoidArgument argument) {
  const double u = argument == SigmoidArgument::normalized
                       ? 12.0 * t / frame_count
                       : static_cast<double>(frame_count) / 12.0 * t;
  return 5.0 * (sigmoid(u - 4.0) - sigmoid(u - 8.0));
}

double split_rotation_angle(int t, int frame_count, SigmoidArgument argument) {
  if (t <= 1) return 0.0;
  const double dx = split_path_x(t, frame_count) - split_path_x(t - 1, frame_count);
  const double dy =
      split_path_y(t, frame_count, argument) - split_path_y(t - 1, frame_count, argument);
  return std::atan2(dy, dx);
}

Schedule scenario_split_rejoin(const SimParams& params, SigmoidArgument argument) {
  if (params.agent_count < 2) fail("split-rejoin needs at least 2 agents");
  Schedule s = base_schedule("split-rejoin", params);
  const std::size_t n = static_cast<std::size_t>(params.agent_count);
  const std::size_t upper = (n + 1) / 2;
  const int frames = params.step_count;
  for (int t = 1; t < frames; ++t) {
    const double gamma = split_rotation_angle(t, frames, argument);
    auto& rot = s.steps[static_cast<std::size_t>(t - 1)].rotations;
    rot.assign(n, Mat2::rotation(-gamma));
    std::fill(rot.begin(), rot.begin() + static_cast<std::ptrdiff_t>(upper), Mat2::rotation(gamma));
  }
  // steepest ascent and descent of the reference path
  if (argument == SigmoidArgument::normalized) {
    s.phase_starts = {static_cast<int>(std::lround(frames / 3.0)),
                      static_cast<int>(std::lround(2.0 * frames / 3.0))};
  }
  return s;
}

SimParams scenario_defaults(std::string_view name) {
  if (name == "speed-switch") return speed_switch_defaults();
  if (name == "noise-switch") return noise_switch_defaults();
  if (name == "split-rejoin") return split_rejoin_defaults();
  fail("unknown scenario '" + std::string(name) + "'");
}

Schedule make_scenario(std::string_view name, const SimParams& params, SigmoidArgument argument) {
  if (name == "speed-switch") return scenario_speed_switch(params);
  if (name == "noise-switch") return scenario_noise_switch(params);
  if (name == "split-rejoin") return scenario_split_rejoin(params, argument);
  fail("unknown scenario '" + std::string(name) + "'");
}

std::vector<AgentState> initial_states(const SimParams& params, Rng& rng) {
  const Boundary boundary{params.half_width, params.half_height, true};
  const Vec2 centre{-params.half_width + 2.0, 0.0};
  constexpr double kRadius = 2.0;
  std::vector<AgentState> states(static_cast<std::size_t>(params.agent_count));
  for (auto& s : states) {
    const double r = kRadius * std::sqrt(rng.canonical());
    const double phi = 2.0 * std::numbers::pi * rng.canonical();
    s.unwrapped = centre + r * unit(phi);
    s.position = boundary.wrap(s.unwrapped);
    s.heading = 0.0;
    s.speed_offset = rng.uniform(-params.speed_jitter, params.speed_jitter);
  }
  return states;
}

TrajectoryDataset simulate(const Schedule& schedule, std::uint64_t seed) {
  schedule.validate();
  Rng rng(seed);
  const SimParams& p = schedule.params;

  TrajectoryDataset data;
  data.boundary = schedule.boundary();
  data.unwrapped = true;
  data.seed = seed;
  data.phase_starts = schedule.phase_starts;
  data.frames.reserve(static_cast<std::size_t>(p.step_count));
  data.wrapped_frames.reserve(static_cast<std::size_t>(p.step_count));

  auto record = [&](const std::vector<AgentState>& states) {
    Configuration raw(states.size()), folded(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      raw[i] = states[i].unwrapped;
      folded[i] = states[i].position;
    }
    data.frames.push_back(std::move(raw));
    data.wrapped_frames.push_back(std::move(folded));
  };

  std::vector<AgentState> states = initial_states(p, rng);
  record(states);
  for (int t = 1; t < p.step_count; ++t) {
    states = step(states, schedule, t, rng);
    record(states);
  }
  return data;
}

}  // namespace swarmfold
