#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swarmfold/error.hpp"
#include "swarmfold/geometry.hpp"
#include "swarmfold/manifold.hpp"

namespace swarmfold {

// Contiguous run of steps, 1-based and inclusive.
struct Segment {
  int first = 1;
  int last = 1;
  double mean = 0.0;  // mean coarse observable over the run
  int regime = 0;     // k-means class, numbered from the lowest centre
  int label = 0;      // manifold label, numbered from 1 by first appearance

  int length() const { return last - first + 1; }
};

struct SegmentParams {
  int min_length = 10;
  double merge_tolerance = 0.1;
  int regimes = 2;
};

struct PhaseSegmentation {
  std::vector<Segment> segments;
  SegmentParams params;
  int label_count = 0;
};

// Splits the series into regimes by 1-D k-means (two by default: low/high) and
// merges runs shorter than min_length into the neighbour with the closer mean.
std::vector<Segment> segment_series(std::span<const double> series, int min_length,
                                    int regimes = 2);

PhaseSegmentation label_manifolds(std::vector<Segment> segments, double tolerance);

inline PhaseSegmentation segment_phases(std::span<const double> series,
                                        const SegmentParams& params = {}) {
  PhaseSegmentation p = label_manifolds(segment_series(series, params.min_length, params.regimes),
                                        params.merge_tolerance);
  p.params = params;
  return p;
}

struct SegmentReports {
  std::vector<std::optional<EmbeddingReport>> per_segment;
  EmbeddingReport full;
  Warnings warnings;
};

// Isomap on the configurations of each segment and on every analysed step.
// frames[t - 1] is the configuration at step t.
SegmentReports per_segment_isomap(std::span<const Configuration> frames,
                                  const PhaseSegmentation& segmentation,
                                  const IsomapParams& params = {});

}  // namespace swarmfold
