#include "swarmfold/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "swarmfold/io.hpp"
#include "swarmfold/sim.hpp"

namespace swarmfold {

TrajectoryDataset produce_dataset(const PipelineConfig& config) {
  config.validate();
  if (!config.input.empty()) return load_trajectory_csv(config.input);
  const Schedule schedule = make_scenario(config.scenario, config.sim_params(), config.sigmoid);
  return simulate(schedule, config.seed);
}

PipelineResult analyze(TrajectoryDataset data, const PipelineConfig& config) {
  if (data.frame_count() < 2) throw Error("pipeline", "need at least 2 frames");
  data.validate();

  PipelineResult r;
  MatchOptions match;
  TrajectoryDataset analysed = data;
  if (config.use_wrapped_track && !data.wrapped_frames.empty()) {
    analysed.frames = data.wrapped_frames;
    analysed.unwrapped = false;
  }
  if ((config.periodic_matching || !analysed.unwrapped) && analysed.boundary.periodic) {
    match.periodic = analysed.boundary;
  }

  r.field = velocities(analysed, match);
  r.warnings.insert(r.warnings.end(), r.field.warnings.begin(), r.field.warnings.end());
  r.observables = compute_observables(analysed, r.field.maps, config.observables, &r.warnings);
  r.delta = distance_matrix(r.observables.coarse);
  r.segmentation = segment_phases(r.observables.coarse, config.segments);

  const std::vector<Configuration> frames =
      config.canonicalize ? canonical_frames(analysed, r.field.maps) : analysed.frames;
  r.reports = per_segment_isomap(frames, r.segmentation, config.isomap);
  r.warnings.insert(r.warnings.end(), r.reports.warnings.begin(), r.reports.warnings.end());
  r.data = std::move(data);
  return r;
}

std::string summarize(const PipelineResult& r, const PipelineConfig& config) {
  std::ostringstream s;
  s << "source: " << (config.scenario.empty() ? config.input.string() : config.scenario) << "\n";
  if (r.data.seed) s << "seed: " << *r.data.seed << "\n";
  s << "frames: " << r.data.frame_count() << "\n";
  s << "agents: " << r.data.agent_count() << "\n";
  s << "epsilon (" << to_string(config.observables.epsilon_mode)
    << "): " << format_double(r.observables.epsilon) << "\n";
  s << "segments: " << r.segmentation.segments.size() << "\n";
  s << "manifold labels: " << r.segmentation.label_count << "\n";
  for (std::size_t k = 0; k < r.segmentation.segments.size(); ++k) {
    const Segment& seg = r.segmentation.segments[k];
    s << "  segment " << k + 1 << ": steps " << seg.first << "-" << seg.last
      << " mean X " << format_double(seg.mean) << " label " << seg.label << " d* ";
    if (k < r.reports.per_segment.size() && r.reports.per_segment[k]) {
      s << r.reports.per_segment[k]->dimension << " (k " << r.reports.per_segment[k]->k << ")";
    } else {
      s << "-";
    }
    s << "\n";
  }
  s << "full dataset d*: " << r.reports.full.dimension << " (k " << r.reports.full.k << ")\n";
  s << "warnings: " << r.warnings.size() << "\n";
  for (const auto& w : r.warnings) s << "  " << w << "\n";
  return s.str();
}

void write_artifacts(PipelineResult& r, const PipelineConfig& config, bool with_trajectory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw Error("io", "cannot create '" + config.out_dir.string() + "': " + ec.message());

  auto add = [&](const fs::path& name) {
    r.artifacts.push_back(config.out_dir / name);
    return r.artifacts.back();
  };
  if (with_trajectory) {
    save_trajectory_csv(r.data, add("trajectory.csv"));
    if (!r.data.wrapped_frames.empty()) {
      save_trajectory_csv(r.data, add("trajectory_wrapped.csv"), true);
    }
  }
  save_observables_csv(r.observables, add("observables.csv"));
  save_distance_image(r.delta, add("distance.pgm"));
  save_segments_csv(r.segmentation, r.reports, add("segments.csv"));
  for (std::size_t k = 0; k < r.reports.per_segment.size(); ++k) {
    if (r.reports.per_segment[k]) {
      save_residual_csv(*r.reports.per_segment[k],
                        add("residual_segment_" + std::to_string(k + 1) + ".csv"));
    }
  }
  save_residual_csv(r.reports.full, add("residual_full.csv"));
  save_embedding_csv(r.reports.full, r.reports.full.dimension, add("embedding_full.csv"));
  if (config.dump_correspondence) save_correspondence_csv(r.field.maps, add("correspondence.csv"));

  const fs::path summary = add("summary.txt");
  std::ofstream out(summary);
  out << summarize(r, config);
  if (!out) throw Error("io", "cannot write '" + summary.string() + "'");
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  PipelineResult r = analyze(produce_dataset(config), config);
  write_artifacts(r, config, true);
  return r;
}

}  // namespace swarmfold
