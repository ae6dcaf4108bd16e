#include "swarmfold/dataset.hpp"

#include <string>

#include "swarmfold/error.hpp"

namespace swarmfold {

void TrajectoryDataset::validate() const {
  const std::size_t n = agent_count();
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (frames[t].size() != n) {
      throw Error("dataset", "frame " + std::to_string(t + 1) + ": expected " +
                                 std::to_string(n) + " agents, found " +
                                 std::to_string(frames[t].size()));
    }
  }
}

}  // namespace swarmfold
