#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>

#include "swarmfold/manifold.hpp"
#include "swarmfold/observables.hpp"
#include "swarmfold/segment.hpp"
#include "swarmfold/sim.hpp"

namespace swarmfold {

struct PipelineConfig {
  std::string scenario;  // exactly one of scenario / input
  std::filesystem::path input;
  std::uint64_t seed = 1;
  // key -> value overrides of the scenario's SimParams (agents, steps, dt, ...)
  std::map<std::string, double> sim_overrides;
  SigmoidArgument sigmoid = SigmoidArgument::normalized;

  ObservableOptions observables;
  IsomapParams isomap;
  SegmentParams segments;

  bool use_wrapped_track = false;  // analyse the folded track with periodic matching
  bool periodic_matching = false;
  bool canonicalize = true;        // chain permutations before Isomap
  bool dump_correspondence = false;
  std::filesystem::path out_dir = "out";

  // Scenario defaults with overrides and the seed applied.
  SimParams sim_params() const;
  void validate() const;
};

// Applies one `key = value` entry; errors name the key.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value);

// Line-oriented `key = value` text, `#` starts a comment.
void apply_config_text(PipelineConfig& config, std::istream& in);
void apply_config_file(PipelineConfig& config, const std::filesystem::path& path);

}  // namespace swarmfold
