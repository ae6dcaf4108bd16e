#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "swarmfold/config.hpp"
#include "swarmfold/dataset.hpp"
#include "swarmfold/mapping.hpp"
#include "swarmfold/observables.hpp"
#include "swarmfold/segment.hpp"

namespace swarmfold {

struct PipelineResult {
  TrajectoryDataset data;
  VelocityField field;
  ObservableSeries observables;
  DistanceMatrix delta;
  PhaseSegmentation segmentation;
  SegmentReports reports;
  Warnings warnings;
  std::vector<std::filesystem::path> artifacts;
};

// Simulates the configured scenario or loads the input trajectory.
TrajectoryDataset produce_dataset(const PipelineConfig& config);

// correspond -> observables -> distance matrix -> segments -> Isomap.
PipelineResult analyze(TrajectoryDataset data, const PipelineConfig& config);

// Plain-text digest of the segmentation and dimensionality estimates.
std::string summarize(const PipelineResult& result, const PipelineConfig& config);

// Writes every artifact of `result` under config.out_dir and records the paths.
void write_artifacts(PipelineResult& result, const PipelineConfig& config, bool with_trajectory);

PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace swarmfold
