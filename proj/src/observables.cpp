#include "swarmfold/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "swarmfold/kdtree.hpp"
#include "swarmfold/union_find.hpp"

namespace swarmfold {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("observables", message); }

}  // namespace

EpsilonMode parse_epsilon_mode(std::string_view name) {
  if (name == "all_pairs" || name == "all-pairs") return EpsilonMode::all_pairs;
  if (name == "nearest_neighbor" || name == "nearest-neighbor") {
    return EpsilonMode::nearest_neighbor;
  }
  fail("unknown epsilon mode '" + std::string(name) + "'");
}

std::string_view to_string(EpsilonMode mode) {
  return mode == EpsilonMode::all_pairs ? "all_pairs" : "nearest_neighbor";
}

void Weights::validate() const {
  if (!(speed >= 0.0) || !(polarization >= 0.0) || !(speed + polarization <= 1.0 + 1e-12)) {
    fail("weights must satisfy xi1 >= 0, xi2 >= 0, xi1 + xi2 <= 1 (got " +
         std::to_string(speed) + ", " + std::to_string(polarization) + ")");
  }
}

double DistanceMatrix::max() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, v);
  return m;
}

std::vector<double> group_speed_series(std::span<const CorrespondenceMap> maps,
                                       Warnings* warnings, std::optional<double> normalization) {
  if (maps.empty()) fail("group speed needs at least one step");
  std::vector<double> speed(maps.size());
  for (std::size_t t = 0; t < maps.size(); ++t) speed[t] = norm(maps[t].group_mean);

  double scale = 0.0;
  if (normalization) {
    if (!(*normalization > 0.0)) fail("speed normalization must be positive");
    scale = *normalization;
  } else {
    scale = *std::max_element(speed.begin(), speed.end());
    if (scale == 0.0) {
      warn(warnings, "group is stationary at every step; normalized speed set to 0");
      std::fill(speed.begin(), speed.end(), 0.0);
      return speed;
    }
  }
  bool overshoot = false;
  for (double& s : speed) {
    s /= scale;
    overshoot = overshoot || s > 1.0;
  }
  if (overshoot) warn(warnings, "normalized speed exceeds 1; normalization constant too small");
  return speed;
}

double polarization(std::span<const Vec2> velocities, Warnings* warnings) {
  Vec2 sum{};
  std::size_t counted = 0;
  for (const Vec2& v : velocities) {
    if (v.x == 0.0 && v.y == 0.0) continue;
    sum += unit(std::atan2(v.y, v.x));
    ++counted;
  }
  if (counted == 0) {
    warn(warnings, "all velocities are zero; polarization set to 0");
    return 0.0;
  }
  return std::min(1.0, norm(sum) / static_cast<double>(counted));
}

double interaction_epsilon(std::span<const Configuration> frames, EpsilonMode mode) {
  if (frames.empty()) fail("interaction radius needs at least one frame");
  const std::size_t n = frames.front().size();
  if (n < 2) fail("interaction radius needs at least 2 agents");

  double total = 0.0;
  std::size_t count = 0;
  for (const Configuration& c : frames) {
    if (c.size() != n) fail("frames differ in agent count");
    if (mode == EpsilonMode::all_pairs) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) total += norm(c[j] - c[i]);
      }
      count += n * (n - 1) / 2;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) best = std::min(best, norm(c[j] - c[i]));
        }
        total += best;
      }
      count += n;
    }
  }
  return total / static_cast<double>(count);
}

double interaction_epsilon(const TrajectoryDataset& data, EpsilonMode mode) {
  return interaction_epsilon(std::span<const Configuration>(data.frames), mode);
}

int connected_components(const Configuration& config, double epsilon) {
  if (!(epsilon > 0.0)) fail("component radius must be positive");
  const KdTree tree(config);
  UnionFind sets(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    for (int j : tree.within(config[i], epsilon)) sets.unite(i, static_cast<std::size_t>(j));
  }
  return static_cast<int>(sets.set_count());
}

double coarse_observable(double speed, double polarization, int components,
                         std::size_t agent_count, const Weights& weights) {
  weights.validate();
  if (agent_count == 0) fail("coarse observable needs at least one agent");
  const double structure = static_cast<double>(components) / static_cast<double>(agent_count);
  const double rest = 1.0 - weights.speed - weights.polarization;
  const double x = weights.speed * speed + weights.polarization * polarization + rest * structure;
  // absorb rounding from the weight complement
  if (x > 1.0 && x < 1.0 + 1e-12) return 1.0;
  return x;
}

ObservableSeries compute_observables(const TrajectoryDataset& data,
                                     std::span<const CorrespondenceMap> maps,
                                     const ObservableOptions& options, Warnings* warnings) {
  options.weights.validate();
  if (maps.size() + 1 != data.frame_count()) {
    fail("expected " + std::to_string(data.frame_count() - 1) + " correspondences, got " +
         std::to_string(maps.size()));
  }
  ObservableSeries s;
  s.weights = options.weights;
  s.agent_count = data.agent_count();
  s.epsilon = interaction_epsilon(data, options.epsilon_mode);
  s.speed = group_speed_series(maps, warnings, options.speed_normalization);

  const std::size_t steps = maps.size();
  s.polarization.resize(steps);
  s.components.resize(steps);
  s.coarse.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    Warnings local;
    s.polarization[t] = polarization(maps[t].velocities, &local);
    for (auto& w : local) warn(warnings, "step " + std::to_string(t + 1) + ": " + w);
    s.components[t] = connected_components(data.frames[t], s.epsilon);
    s.coarse[t] = coarse_observable(s.speed[t], s.polarization[t], s.components[t],
                                    s.agent_count, s.weights);
  }
  return s;
}

DistanceMatrix distance_matrix(std::span<const double> coarse) {
  if (coarse.empty()) fail("distance matrix needs a nonempty series");
  // On the 2^-52 grid every difference of values in [-1, 1], and every sum of
  // two such differences, is exact, so the triangle inequality holds bitwise.
  std::vector<double> grid(coarse.size());
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    grid[i] = std::ldexp(std::nearbyint(std::ldexp(coarse[i], 52)), -52);
  }
  DistanceMatrix d(coarse.size());
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    for (std::size_t j = 0; j < coarse.size(); ++j) d(i, j) = std::abs(grid[i] - grid[j]);
  }
  return d;
}

}  // namespace swarmfold
