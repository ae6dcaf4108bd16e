#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "swarmfold/geometry.hpp"

namespace swarmfold {

// The ordered set of configurations Q = {A(1), ..., A(T)}.
struct TrajectoryDataset {
  // Analysis track. Holds unwrapped positions when `unwrapped` is set.
  std::vector<Configuration> frames;
  // Positions folded into the periodic box; only simulations fill this.
  std::vector<Configuration> wrapped_frames;
  Boundary boundary;
  bool unwrapped = true;
  std::optional<std::uint64_t> seed;
  // Ground-truth first steps of each new phase, for test harnesses.
  std::vector<int> phase_starts;

  std::size_t frame_count() const { return frames.size(); }
  std::size_t agent_count() const { return frames.empty() ? 0 : frames.front().size(); }

  // Throws swarmfold::Error when frames disagree on N.
  void validate() const;
};

}  // namespace swarmfold
