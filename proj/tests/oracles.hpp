#pragma once

// Brute-force references and random fixtures shared by the unit and
// acceptance tests. Everything here is deliberately naive.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "swarmfold/dataset.hpp"
#include "swarmfold/geometry.hpp"
#include "swarmfold/manifold.hpp"
#include "swarmfold/rng.hpp"

namespace swarmfold::testing {

inline Configuration random_configuration(Rng& rng, std::size_t n, double extent) {
  Configuration c(n);
  for (auto& p : c) p = {rng.uniform(-extent, extent), rng.uniform(-extent, extent)};
  return c;
}

// Argmin over a linear scan, first index wins ties.
inline std::vector<int> brute_nearest(const Configuration& from, const Configuration& to) {
  std::vector<int> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.size(); ++j) {
      const double d = squared_norm(to[j] - from[i]);
      if (d < best) {
        best = d;
        out[i] = static_cast<int>(j);
      }
    }
  }
  return out;
}

// Pairing of sources to targets minimising the summed deviation of each
// displacement from mu, by exhaustive enumeration of target permutations.
inline std::vector<int> brute_best_pairing(const Configuration& from, const Configuration& to,
                                           const std::vector<int>& sources,
                                           std::vector<int> targets, Vec2 mu) {
  std::sort(targets.begin(), targets.end());
  std::vector<int> best;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t k = 0; k < sources.size(); ++k) {
      cost += norm(to[targets[k]] - from[sources[k]] - mu);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = targets;
    }
  } while (std::next_permutation(targets.begin(), targets.end()));
  return best;
}

inline bool is_permutation_of_range(const std::vector<int>& p) {
  std::vector<int> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i)) return false;
  }
  return true;
}

// Dense all-pairs dynamic programme over the graph's edge list.
inline Eigen::MatrixXd floyd_warshall(const NeighborGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::infinity());
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (const auto& e : g.adjacency[static_cast<std::size_t>(i)]) {
      d(i, e.to) = std::min(d(i, e.to), e.weight);
    }
  }
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (d(i, k) + d(k, j) < d(i, j)) d(i, j) = d(i, k) + d(k, j);
  return d;
}

// Random connected undirected graph: a random spanning tree plus extra edges,
// small integer weights so every path sum is exact in floating point.
inline NeighborGraph random_connected_graph(Rng& rng, int n) {
  NeighborGraph g;
  g.adjacency.resize(static_cast<std::size_t>(n));
  auto add = [&](int a, int b, double w) {
    g.adjacency[static_cast<std::size_t>(a)].push_back({b, w});
    g.adjacency[static_cast<std::size_t>(b)].push_back({a, w});
  };
  auto weight = [&] { return std::floor(rng.uniform(1.0, 20.0)); };
  for (int v = 1; v < n; ++v) {
    add(v, static_cast<int>(rng.canonical() * v), weight());
  }
  const int extra = static_cast<int>(rng.canonical() * 2 * n);
  for (int e = 0; e < extra; ++e) {
    const int a = static_cast<int>(rng.canonical() * n);
    const int b = static_cast<int>(rng.canonical() * n);
    if (a != b) add(a, b, weight());
  }
  g.k = 0;
  return g;
}

// Rigidly translating group, spacing well above the per-step displacement.
inline TrajectoryDataset translating_group(Rng& rng, std::size_t n, int frames, Vec2 velocity) {
  TrajectoryDataset data;
  data.boundary.periodic = false;
  Configuration base;
  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  for (std::size_t i = 0; i < n; ++i) {
    base.push_back({static_cast<double>(i % side) + rng.uniform(-0.2, 0.2),
                    static_cast<double>(i / side) + rng.uniform(-0.2, 0.2)});
  }
  for (int t = 0; t < frames; ++t) {
    Configuration c = base;
    for (auto& p : c) p += velocity * static_cast<double>(t);
    data.frames.push_back(std::move(c));
  }
  return data;
}

inline TrajectoryDataset shuffled_frames(const TrajectoryDataset& data, std::uint64_t seed) {
  TrajectoryDataset out = data;
  std::mt19937_64 engine(seed);
  for (auto& f : out.frames) std::shuffle(f.begin(), f.end(), engine);
  return out;
}

// One turn of a swiss roll in 3-D, about 49 x 30 when unrolled. Longer rolls
// short-circuit the k = 7 graph at 500 samples.
inline Eigen::MatrixXd swiss_roll(std::uint64_t seed, int count = 500) {
  constexpr double pi = 3.141592653589793;
  Rng rng(seed);
  Eigen::MatrixXd pts(count, 3);
  for (int i = 0; i < count; ++i) {
    const double t = 1.5 * pi + 2.0 * pi * rng.canonical();
    const double h = 30.0 * rng.canonical();
    pts(i, 0) = t * std::cos(t);
    pts(i, 1) = h;
    pts(i, 2) = t * std::sin(t);
  }
  return pts;
}

inline Eigen::MatrixXd pairwise(const Eigen::MatrixXd& pts) {
  const auto n = pts.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = (pts.row(i) - pts.row(j)).norm();
  return d;
}

}  // namespace swarmfold::testing
