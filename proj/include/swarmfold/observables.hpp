#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "swarmfold/dataset.hpp"
#include "swarmfold/error.hpp"
#include "swarmfold/mapping.hpp"

namespace swarmfold {

// How the interaction radius is averaged over the dataset.
enum class EpsilonMode {
  all_pairs,         // mean distance over every unordered pair and frame
  nearest_neighbor,  // mean nearest-neighbour distance over agents and frames
};

EpsilonMode parse_epsilon_mode(std::string_view name);
std::string_view to_string(EpsilonMode mode);

// Convex weights of the coarse observable; the component count gets 1 - speed - polarization.
struct Weights {
  double speed = 1.0 / 3.0;
  double polarization = 1.0 / 3.0;

  void validate() const;
};

struct ObservableOptions {
  Weights weights;
  EpsilonMode epsilon_mode = EpsilonMode::all_pairs;
  // Streaming mode: divide group speeds by this instead of the series maximum.
  std::optional<double> speed_normalization;
};

// Per-step observables, one entry per correspondence (T-1 entries).
struct ObservableSeries {
  std::vector<double> speed;
  std::vector<double> polarization;
  std::vector<int> components;
  std::vector<double> coarse;
  Weights weights;
  double epsilon = 0.0;
  std::size_t agent_count = 0;

  std::size_t size() const { return coarse.size(); }
};

// Dense symmetric matrix of |X(t1) - X(t2)|.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double max() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

std::vector<double> group_speed_series(std::span<const CorrespondenceMap> maps,
                                       Warnings* warnings = nullptr,
                                       std::optional<double> normalization = std::nullopt);

// Agents with zero velocity have no heading and are left out of the sum.
double polarization(std::span<const Vec2> velocities, Warnings* warnings = nullptr);

double interaction_epsilon(const TrajectoryDataset& data,
                           EpsilonMode mode = EpsilonMode::all_pairs);
double interaction_epsilon(std::span<const Configuration> frames,
                           EpsilonMode mode = EpsilonMode::all_pairs);

// Components of the graph joining agents at distance <= epsilon.
int connected_components(const Configuration& config, double epsilon);

double coarse_observable(double speed, double polarization, int components,
                         std::size_t agent_count, const Weights& weights);

ObservableSeries compute_observables(const TrajectoryDataset& data,
                                     std::span<const CorrespondenceMap> maps,
                                     const ObservableOptions& options = {},
                                     Warnings* warnings = nullptr);

DistanceMatrix distance_matrix(std::span<const double> coarse);

}  // namespace swarmfold
