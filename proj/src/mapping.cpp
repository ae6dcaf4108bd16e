#include "swarmfold/mapping.hpp"

#include <limits>
#include <string>

#include "swarmfold/kdtree.hpp"

namespace swarmfold {

namespace {

Vec2 displacement(Vec2 from, Vec2 to, const MatchOptions& options) {
  const Vec2 d = to - from;
  return options.periodic ? options.periodic->minimum_image(d) : d;
}

}  // namespace

std::size_t CorrespondenceMap::domain_size() const {
  std::size_t m = 0;
  for (bool b : in_domain) m += b ? 1 : 0;
  return m;
}

Candidates nearest_neighbor_map(const Configuration& from, const Configuration& to,
                                const MatchOptions& options) {
  if (from.size() != to.size()) {
    throw Error("mapping", "frames differ in agent count (" + std::to_string(from.size()) +
                               " vs " + std::to_string(to.size()) + ")");
  }
  Candidates c;
  c.target.resize(from.size());
  c.distance.resize(from.size());
  if (to.empty()) return c;

  const KdTree tree(to);
  for (std::size_t i = 0; i < from.size(); ++i) {
    KdTree::Hit best;
    if (!options.periodic) {
      best = tree.nearest(from[i]);
    } else {
      // the nearest periodic copy is the nearest of the nine image queries
      const double px = 2.0 * options.periodic->half_width;
      const double py = 2.0 * options.periodic->half_height;
      best = {-1, std::numeric_limits<double>::infinity()};
      for (int sx = -1; sx <= 1; ++sx) {
        for (int sy = -1; sy <= 1; ++sy) {
          const KdTree::Hit h = tree.nearest(from[i] + Vec2{sx * px, sy * py});
          if (h.squared_distance < best.squared_distance ||
              (h.squared_distance == best.squared_distance && h.index < best.index)) {
            best = h;
          }
        }
      }
    }
    c.target[i] = best.index;
    c.distance[i] = std::sqrt(best.squared_distance);
  }
  return c;
}

BijectiveDomain extract_bijective_domain(const Candidates& candidates) {
  const std::size_t n = candidates.target.size();
  BijectiveDomain d;
  d.in_domain.assign(n, false);
  d.target.assign(n, -1);
  std::vector<int> winner(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(candidates.target[i]);
    const int w = winner[j];
    // scanning in source order makes strict < keep the lowest index on ties
    if (w < 0 || candidates.distance[i] < candidates.distance[static_cast<std::size_t>(w)]) {
      winner[j] = static_cast<int>(i);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (winner[j] >= 0) {
      const auto i = static_cast<std::size_t>(winner[j]);
      d.in_domain[i] = true;
      d.target[i] = static_cast<int>(j);
    }
  }
  return d;
}

std::vector<int> residual_match(const Configuration& from, const Configuration& to,
                                std::span<const int> sources, std::span<const int> targets,
                                Vec2 mean_velocity, const MatchOptions& options) {
  if (sources.size() != targets.size()) {
    throw Error("mapping", "residual match needs as many free targets as sources");
  }
  std::vector<int> free(targets.begin(), targets.end());
  std::vector<int> chosen;
  chosen.reserve(sources.size());
  for (int i : sources) {
    std::size_t best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < free.size(); ++k) {
      const Vec2 d = displacement(from[static_cast<std::size_t>(i)],
                                  to[static_cast<std::size_t>(free[k])], options);
      const double cost = squared_norm(d - mean_velocity);
      if (cost < best_cost || (cost == best_cost && free[k] < free[best])) {
        best_cost = cost;
        best = k;
      }
    }
    chosen.push_back(free[best]);
    free.erase(free.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return chosen;
}

CorrespondenceMap correspond(const Configuration& from, const Configuration& to,
                             const MatchOptions& options, Vec2 fallback_mean, int step) {
  const Candidates candidates = nearest_neighbor_map(from, to, options);
  const BijectiveDomain domain = extract_bijective_domain(candidates);
  const std::size_t n = from.size();

  CorrespondenceMap map;
  map.step = step;
  map.in_domain = domain.in_domain;
  map.permutation = domain.target;
  map.velocities.assign(n, Vec2{});

  std::vector<bool> claimed(n, false);
  std::size_t m = 0;
  Vec2 sum{};
  for (std::size_t i = 0; i < n; ++i) {
    if (!domain.in_domain[i]) continue;
    const auto j = static_cast<std::size_t>(domain.target[i]);
    claimed[j] = true;
    map.velocities[i] = displacement(from[i], to[j], options);
    sum += map.velocities[i];
    ++m;
  }
  map.domain_empty = (m == 0);
  map.domain_mean = m > 0 ? sum / static_cast<double>(m) : fallback_mean;

  std::vector<int> sources, targets;
  for (std::size_t i = 0; i < n; ++i) {
    if (!domain.in_domain[i]) sources.push_back(static_cast<int>(i));
    if (!claimed[i]) targets.push_back(static_cast<int>(i));
  }
  const std::vector<int> residual =
      residual_match(from, to, sources, targets, map.domain_mean, options);
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const auto i = static_cast<std::size_t>(sources[k]);
    map.permutation[i] = residual[k];
    map.velocities[i] = displacement(from[i], to[static_cast<std::size_t>(residual[k])], options);
  }

  Vec2 total{};
  for (const Vec2& v : map.velocities) total += v;
  map.group_mean = n > 0 ? total / static_cast<double>(n) : Vec2{};
  return map;
}

VelocityField velocities(const TrajectoryDataset& data, const MatchOptions& options) {
  if (data.frame_count() < 2) throw Error("mapping", "need at least 2 frames");
  data.validate();
  VelocityField field;
  field.maps.reserve(data.frame_count() - 1);
  const double n = static_cast<double>(data.agent_count());
  Vec2 previous{};
  for (std::size_t t = 0; t + 1 < data.frame_count(); ++t) {
    CorrespondenceMap map = correspond(data.frames[t], data.frames[t + 1], options, previous,
                                       static_cast<int>(t + 1));
    if (static_cast<double>(map.domain_size()) < n / 2.0) {
      field.warnings.push_back("step " + std::to_string(t + 1) + ": only " +
                               std::to_string(map.domain_size()) + " of " +
                               std::to_string(data.agent_count()) +
                               " agents matched without conflict");
    }
    previous = map.group_mean;
    field.maps.push_back(std::move(map));
  }
  return field;
}

std::vector<Configuration> canonical_frames(const TrajectoryDataset& data,
                                            std::span<const CorrespondenceMap> maps) {
  std::vector<Configuration> out;
  if (data.frames.empty()) return out;
  const std::size_t n = data.agent_count();
  std::vector<int> index(n);
  for (std::size_t k = 0; k < n; ++k) index[k] = static_cast<int>(k);
  out.push_back(data.frames.front());
  for (std::size_t t = 0; t + 1 < data.frame_count() && t < maps.size(); ++t) {
    Configuration next(n);
    for (std::size_t k = 0; k < n; ++k) {
      index[k] = maps[t].permutation[static_cast<std::size_t>(index[k])];
      next[k] = data.frames[t + 1][static_cast<std::size_t>(index[k])];
    }
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace swarmfold
