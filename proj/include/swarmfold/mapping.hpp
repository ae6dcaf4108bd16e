#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swarmfold/dataset.hpp"
#include "swarmfold/error.hpp"
#include "swarmfold/geometry.hpp"

namespace swarmfold {

struct MatchOptions {
  // Measure displacements by minimum image on this box (for wrapped-only data).
  std::optional<Boundary> periodic;
};

// Nearest target in the next frame for every source agent.
struct Candidates {
  std::vector<int> target;
  std::vector<double> distance;
};

// Conflict-free part of the nearest-neighbour map.
struct BijectiveDomain {
  std::vector<bool> in_domain;  // membership of each source in D
  std::vector<int> target;      // -1 for sources outside D
};

// Correspondence between frame t and t+1 plus the derived velocities.
struct CorrespondenceMap {
  int step = 1;
  std::vector<int> permutation;  // permutation[i] = j: agent i at t is agent j at t+1
  std::vector<bool> in_domain;
  std::vector<Vec2> velocities;  // per source agent, length per time step
  Vec2 domain_mean;              // mean velocity over D (or the fallback when D is empty)
  Vec2 group_mean;               // mean over all agents
  bool domain_empty = false;

  std::size_t domain_size() const;
};

Candidates nearest_neighbor_map(const Configuration& from, const Configuration& to,
                                const MatchOptions& options = {});

BijectiveDomain extract_bijective_domain(const Candidates& candidates);

// Greedy assignment of the leftover sources (in increasing index) to the free
// target whose displacement is closest to `mean_velocity`. Returns the chosen
// target for each entry of `sources`.
std::vector<int> residual_match(const Configuration& from, const Configuration& to,
                                std::span<const int> sources, std::span<const int> targets,
                                Vec2 mean_velocity, const MatchOptions& options = {});

// Full map for one pair of frames. `fallback_mean` stands in for the domain
// mean when no agent is conflict-free.
CorrespondenceMap correspond(const Configuration& from, const Configuration& to,
                             const MatchOptions& options = {}, Vec2 fallback_mean = {},
                             int step = 1);

struct VelocityField {
  std::vector<CorrespondenceMap> maps;  // T-1 entries
  Warnings warnings;
};

VelocityField velocities(const TrajectoryDataset& data, const MatchOptions& options = {});

// Chains the per-step permutations so agent k keeps index k in every frame.
std::vector<Configuration> canonical_frames(const TrajectoryDataset& data,
                                            std::span<const CorrespondenceMap> maps);

}  // namespace swarmfold
