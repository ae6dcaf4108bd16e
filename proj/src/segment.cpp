#include "swarmfold/segment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace swarmfold {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("segment", message); }

double run_mean(std::span<const double> x, int first, int last) {
  double s = 0.0;
  for (int t = first; t <= last; ++t) s += x[static_cast<std::size_t>(t - 1)];
  return s / (last - first + 1);
}

// Class of every sample from 1-D k-means with centres seeded evenly from min
// to max. Classes are numbered by increasing centre; ties go to the lower class.
std::vector<int> k_means(std::span<const double> x, int k) {
  auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double low = *lo_it, high = *hi_it;
  std::vector<int> cls(x.size(), 0);
  if (low == high) return cls;
  std::vector<double> centre(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) centre[static_cast<std::size_t>(c)] = low + (high - low) * c / (k - 1);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    std::vector<double> sum(centre.size(), 0.0);
    std::vector<std::size_t> count(centre.size(), 0);
    for (std::size_t t = 0; t < x.size(); ++t) {
      int best = 0;
      for (int c = 1; c < k; ++c) {
        if (std::abs(x[t] - centre[static_cast<std::size_t>(c)]) <
            std::abs(x[t] - centre[static_cast<std::size_t>(best)])) {
          best = c;
        }
      }
      changed = changed || (iter > 0 && best != cls[t]);
      cls[t] = best;
      sum[static_cast<std::size_t>(best)] += x[t];
      ++count[static_cast<std::size_t>(best)];
    }
    if (iter > 0 && !changed) break;
    // an emptied class keeps its centre
    for (std::size_t c = 0; c < centre.size(); ++c) {
      if (count[c] > 0) centre[c] = sum[c] / static_cast<double>(count[c]);
    }
  }
  return cls;
}

void coalesce(std::vector<Segment>& segs, std::span<const double> x) {
  std::vector<Segment> out;
  for (const Segment& s : segs) {
    if (!out.empty() && out.back().regime == s.regime) {
      out.back().last = s.last;
    } else {
      out.push_back(s);
    }
  }
  for (Segment& s : out) s.mean = run_mean(x, s.first, s.last);
  segs = std::move(out);
}

}  // namespace

std::vector<Segment> segment_series(std::span<const double> series, int min_length,
                                    int regimes) {
  if (min_length < 1) fail("min segment length must be >= 1");
  if (regimes < 2) fail("regime count must be >= 2");
  if (series.size() < 2 * static_cast<std::size_t>(min_length)) {
    fail("series of length " + std::to_string(series.size()) + " is shorter than 2 * min_len = " +
         std::to_string(2 * min_length));
  }
  const std::vector<int> cls = k_means(series, regimes);

  std::vector<Segment> segs;
  for (std::size_t t = 0; t < series.size(); ++t) {
    const int step = static_cast<int>(t + 1);
    if (segs.empty() || segs.back().regime != cls[t]) {
      segs.push_back({step, step, 0.0, cls[t], 0});
    } else {
      segs.back().last = step;
    }
  }
  coalesce(segs, series);

  while (segs.size() > 1) {
    // shortest run below the minimum, earliest on ties
    std::size_t pick = segs.size();
    for (std::size_t k = 0; k < segs.size(); ++k) {
      if (segs[k].length() < min_length &&
          (pick == segs.size() || segs[k].length() < segs[pick].length())) {
        pick = k;
      }
    }
    if (pick == segs.size()) break;

    std::size_t into;
    if (pick == 0) {
      into = 1;
    } else if (pick + 1 == segs.size()) {
      into = pick - 1;
    } else {
      const double left = std::abs(segs[pick - 1].mean - segs[pick].mean);
      const double right = std::abs(segs[pick + 1].mean - segs[pick].mean);
      into = right < left ? pick + 1 : pick - 1;
    }
    segs[pick].regime = segs[into].regime;
    coalesce(segs, series);
  }
  return segs;
}

PhaseSegmentation label_manifolds(std::vector<Segment> segments, double tolerance) {
  if (!(tolerance >= 0.0)) fail("merge tolerance must be non-negative");
  PhaseSegmentation out;
  out.params.merge_tolerance = tolerance;
  std::vector<double> representative;  // mean of the first segment carrying each label
  for (Segment& s : segments) {
    s.label = 0;
    for (std::size_t l = 0; l < representative.size(); ++l) {
      if (std::abs(s.mean - representative[l]) <= tolerance) {
        s.label = static_cast<int>(l + 1);
        break;
      }
    }
    if (s.label == 0) {
      representative.push_back(s.mean);
      s.label = static_cast<int>(representative.size());
    }
  }
  out.segments = std::move(segments);
  out.label_count = static_cast<int>(representative.size());
  return out;
}

SegmentReports per_segment_isomap(std::span<const Configuration> frames,
                                  const PhaseSegmentation& segmentation,
                                  const IsomapParams& params) {
  SegmentReports out;
  if (segmentation.segments.empty()) fail("segmentation is empty");
  const int steps = segmentation.segments.back().last;
  if (frames.size() < static_cast<std::size_t>(steps)) {
    fail("segmentation covers " + std::to_string(steps) + " steps but only " +
         std::to_string(frames.size()) + " configurations were given");
  }
  for (const Segment& s : segmentation.segments) {
    if (s.length() < 3) {
      out.warnings.push_back("segment " + std::to_string(s.first) + "-" + std::to_string(s.last) +
                             " has fewer than 3 configurations; skipped");
      out.per_segment.emplace_back(std::nullopt);
      continue;
    }
    const auto part = frames.subspan(static_cast<std::size_t>(s.first - 1),
                                     static_cast<std::size_t>(s.length()));
    out.per_segment.emplace_back(isomap(stack_configurations(part), params));
  }
  out.full = isomap(stack_configurations(frames.first(static_cast<std::size_t>(steps))), params);
  return out;
}

}  // namespace swarmfold
