#include "swarmfold/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace swarmfold {

namespace {

double coord(Vec2 p, int axis) { return axis == 0 ? p.x : p.y; }

}  // namespace

KdTree::KdTree(std::span<const Vec2> points)
    : points_(points.begin(), points.end()), order_(points.size()) {
  std::iota(order_.begin(), order_.end(), 0);
  build(0, static_cast<int>(order_.size()), 0);
}

void KdTree::build(int lo, int hi, int depth) {
  if (hi - lo <= 1) return;
  const int axis = depth % 2;
  const int mid = (lo + hi) / 2;
  std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi,
                   [&](int a, int b) {
                     const double ca = coord(points_[a], axis), cb = coord(points_[b], axis);
                     return ca < cb || (ca == cb && a < b);
                   });
  build(lo, mid, depth + 1);
  build(mid + 1, hi, depth + 1);
}

KdTree::Hit KdTree::nearest(Vec2 query) const {
  Hit best{-1, std::numeric_limits<double>::infinity()};
  search_nearest(0, static_cast<int>(order_.size()), 0, query, best);
  return best;
}

void KdTree::search_nearest(int lo, int hi, int depth, Vec2 q, Hit& best) const {
  if (lo >= hi) return;
  const int mid = (lo + hi) / 2;
  const int idx = order_[mid];
  const double d2 = squared_norm(points_[idx] - q);
  if (d2 < best.squared_distance || (d2 == best.squared_distance && idx < best.index)) {
    best = {idx, d2};
  }
  const int axis = depth % 2;
  const double diff = coord(q, axis) - coord(points_[idx], axis);
  const bool go_left = diff < 0.0;
  if (go_left) {
    search_nearest(lo, mid, depth + 1, q, best);
  } else {
    search_nearest(mid + 1, hi, depth + 1, q, best);
  }
  // <= keeps equal-distance candidates on the far side reachable for tie-breaking
  if (diff * diff <= best.squared_distance) {
    if (go_left) {
      search_nearest(mid + 1, hi, depth + 1, q, best);
    } else {
      search_nearest(lo, mid, depth + 1, q, best);
    }
  }
}

std::vector<int> KdTree::within(Vec2 query, double radius) const {
  std::vector<int> out;
  search_within(0, static_cast<int>(order_.size()), 0, query, radius * radius, out);
  std::sort(out.begin(), out.end());
  return out;
}

void KdTree::search_within(int lo, int hi, int depth, Vec2 q, double r2,
                           std::vector<int>& out) const {
  if (lo >= hi) return;
  const int mid = (lo + hi) / 2;
  const int idx = order_[mid];
  if (squared_norm(points_[idx] - q) <= r2) out.push_back(idx);
  const int axis = depth % 2;
  const double diff = coord(q, axis) - coord(points_[idx], axis);
  if (diff <= 0.0 || diff * diff <= r2) search_within(lo, mid, depth + 1, q, r2, out);
  if (diff >= 0.0 || diff * diff <= r2) search_within(mid + 1, hi, depth + 1, q, r2, out);
}

}  // namespace swarmfold
