#pragma once

#include <span>
#include <vector>

#include "swarmfold/geometry.hpp"

namespace swarmfold {

// Static 2-d tree over a fixed point set. Queries are O(log n) expected.
// Distances are compared as squared Euclidean norms; equal distances resolve
// to the lowest point index so results match a linear scan exactly.
class KdTree {
 public:
  struct Hit {
    int index = -1;
    double squared_distance = 0.0;
  };

  explicit KdTree(std::span<const Vec2> points);

  std::size_t size() const { return points_.size(); }

  Hit nearest(Vec2 query) const;

  // Indices with squared distance <= radius², ascending.
  std::vector<int> within(Vec2 query, double radius) const;

 private:
  void build(int lo, int hi, int depth);
  void search_nearest(int lo, int hi, int depth, Vec2 q, Hit& best) const;
  void search_within(int lo, int hi, int depth, Vec2 q, double r2, std::vector<int>& out) const;

  std::vector<Vec2> points_;
  std::vector<int> order_;  // implicit balanced tree: node of [lo,hi) sits at (lo+hi)/2
};

}  // namespace swarmfold
