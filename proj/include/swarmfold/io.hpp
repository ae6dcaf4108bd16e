#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "swarmfold/dataset.hpp"
#include "swarmfold/mapping.hpp"
#include "swarmfold/observables.hpp"
#include "swarmfold/segment.hpp"

namespace swarmfold {

// Shortest decimal text that reads back to the same double (17 significant digits).
std::string format_double(double v);

// Rows `t,x,y` or `t,id,x,y`, optional header row, `#` comments. Metadata
// comments of the form `# key=value` (seed, half_width, half_height, track)
// are honoured. With an id column agents are ordered by id within each frame.
TrajectoryDataset load_trajectory_csv(const std::filesystem::path& path);
TrajectoryDataset parse_trajectory_csv(std::istream& in);

// Writes `t,id,x,y` rows with a metadata preamble. `wrapped` selects the
// folded track when the dataset carries one.
void save_trajectory_csv(const TrajectoryDataset& data, const std::filesystem::path& path,
                         bool wrapped = false);

// Columns t, speed, P, C, X.
void save_observables_csv(const ObservableSeries& series, const std::filesystem::path& path);

// Binary PGM (P5, maxval 255); pixel (t1, t2) = round(255 * delta / max delta).
void save_distance_image(const DistanceMatrix& delta, const std::filesystem::path& path);

// Columns d, r.
void save_residual_csv(const EmbeddingReport& report, const std::filesystem::path& path);

// Columns point, x1..xd for the embedding of dimension d.
void save_embedding_csv(const EmbeddingReport& report, int dimension,
                        const std::filesystem::path& path);

// Columns start, end, mean_x, label, d. Skipped segments report d = 0.
void save_segments_csv(const PhaseSegmentation& segmentation, const SegmentReports& reports,
                       const std::filesystem::path& path);

// Columns t, source, target, in_domain, vx, vy (1-based indices).
void save_correspondence_csv(std::span<const CorrespondenceMap> maps,
                             const std::filesystem::path& path);

}  // namespace swarmfold
