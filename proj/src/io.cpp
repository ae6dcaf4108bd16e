#include "swarmfold/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace swarmfold {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("io", message); }

std::ofstream open_output(const std::filesystem::path& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) fail("cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) fail("error while writing '" + path.string() + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno != ERANGE && std::isfinite(out);
}

struct Row {
  long long t;
  long long id;
  Vec2 p;
};

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

TrajectoryDataset parse_trajectory_csv(std::istream& in) {
  TrajectoryDataset data;
  data.boundary.periodic = false;
  std::map<std::string, std::string> meta;

  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  bool seen_data_or_header = false;
  std::vector<std::vector<Row>> frames;
  long long current_t = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto eq = text.find('=');
      if (eq != std::string::npos) {
        meta[trim(text.substr(1, eq - 1))] = trim(text.substr(eq + 1));
      }
      continue;
    }
    const auto fields = split_fields(text);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!seen_data_or_header) {
      seen_data_or_header = true;
      double probe;
      if (!fields.empty() && !parse_number(fields[0], probe)) {
        if (fields == std::vector<std::string>{"t", "x", "y"}) {
          columns = 3;
        } else if (fields == std::vector<std::string>{"t", "id", "x", "y"}) {
          columns = 4;
        } else {
          fail(where + "unrecognised header '" + text + "' (expected t,x,y or t,id,x,y)");
        }
        continue;
      }
    }
    if (columns == 0) {
      if (fields.size() != 3 && fields.size() != 4) {
        fail(where + "expected 3 or 4 fields, found " + std::to_string(fields.size()));
      }
      columns = fields.size();
    }
    if (fields.size() != columns) {
      fail(where + "expected " + std::to_string(columns) + " fields, found " +
           std::to_string(fields.size()));
    }
    double values[4];
    for (std::size_t c = 0; c < columns; ++c) {
      if (!parse_number(fields[c], values[c])) {
        fail(where + "non-numeric field '" + fields[c] + "'");
      }
    }
    if (values[0] != std::floor(values[0])) fail(where + "time index must be an integer");
    const auto t = static_cast<long long>(values[0]);
    Row row{t, 0, {}};
    if (columns == 4) {
      if (values[1] != std::floor(values[1])) fail(where + "agent id must be an integer");
      row.id = static_cast<long long>(values[1]);
      row.p = {values[2], values[3]};
    } else {
      row.p = {values[1], values[2]};
    }
    if (frames.empty() || t != current_t) {
      if (!frames.empty() && t != current_t + 1) {
        fail(where + "time index " + std::to_string(t) + " does not follow " +
             std::to_string(current_t));
      }
      current_t = t;
      frames.emplace_back();
    }
    row.id = columns == 4 ? row.id : static_cast<long long>(frames.back().size());
    frames.back().push_back(row);
  }

  if (frames.empty()) fail("trajectory contains no rows");
  const std::size_t n = frames.front().size();
  const long long first_t = frames.front().front().t;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    auto& rows = frames[k];
    if (rows.size() != n) {
      fail("frame " + std::to_string(first_t + static_cast<long long>(k)) + ": expected " +
           std::to_string(n) + " agents, found " + std::to_string(rows.size()));
    }
    if (columns == 4) {
      std::stable_sort(rows.begin(), rows.end(),
                       [](const Row& a, const Row& b) { return a.id < b.id; });
      for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].id == rows[i - 1].id) {
          fail("frame " + std::to_string(rows[i].t) + ": duplicate agent id " +
               std::to_string(rows[i].id));
        }
      }
    }
    Configuration c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = rows[i].p;
    data.frames.push_back(std::move(c));
  }

  auto number = [&](const char* key, double& out) {
    auto it = meta.find(key);
    if (it == meta.end()) return false;
    if (!parse_number(it->second, out)) fail(std::string("metadata '") + key + "' is not numeric");
    return true;
  };
  double hw = 0.0, hh = 0.0;
  if (number("half_width", hw) && number("half_height", hh)) {
    if (!(hw > 0.0 && hh > 0.0)) fail("metadata half sizes must be positive");
    data.boundary = {hw, hh, true};
  }
  if (auto it = meta.find("seed"); it != meta.end()) {
    char* end = nullptr;
    const unsigned long long s = std::strtoull(it->second.c_str(), &end, 10);
    if (end != it->second.c_str() + it->second.size()) fail("metadata 'seed' is not an integer");
    data.seed = s;
  }
  if (auto it = meta.find("track"); it != meta.end()) {
    if (it->second != "wrapped" && it->second != "unwrapped") {
      fail("metadata 'track' must be wrapped or unwrapped");
    }
    data.unwrapped = it->second == "unwrapped";
  }
  return data;
}

TrajectoryDataset load_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read '" + path.string() + "'");
  return parse_trajectory_csv(in);
}

void save_trajectory_csv(const TrajectoryDataset& data, const std::filesystem::path& path,
                         bool wrapped) {
  const bool use_wrapped = wrapped && !data.wrapped_frames.empty();
  const auto& frames = use_wrapped ? data.wrapped_frames : data.frames;
  auto out = open_output(path);
  out << "# swarmfold trajectory\n";
  if (data.seed) out << "# seed=" << *data.seed << "\n";
  if (data.boundary.periodic) {
    out << "# half_width=" << format_double(data.boundary.half_width) << "\n";
    out << "# half_height=" << format_double(data.boundary.half_height) << "\n";
  }
  out << "# track=" << ((use_wrapped || !data.unwrapped) ? "wrapped" : "unwrapped") << "\n";
  out << "t,id,x,y\n";
  for (std::size_t t = 0; t < frames.size(); ++t) {
    for (std::size_t i = 0; i < frames[t].size(); ++i) {
      out << t + 1 << ',' << i + 1 << ',' << format_double(frames[t][i].x) << ','
          << format_double(frames[t][i].y) << '\n';
    }
  }
  finish(out, path);
}

void save_observables_csv(const ObservableSeries& s, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "t,speed,P,C,X\n";
  for (std::size_t t = 0; t < s.size(); ++t) {
    out << t + 1 << ',' << format_double(s.speed[t]) << ',' << format_double(s.polarization[t])
        << ',' << s.components[t] << ',' << format_double(s.coarse[t]) << '\n';
  }
  finish(out, path);
}

void save_distance_image(const DistanceMatrix& delta, const std::filesystem::path& path) {
  const std::size_t n = delta.size();
  const double top = delta.max();
  std::string pixels(n * n, '\0');
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double level = top > 0.0 ? delta(i, j) / top : 0.0;
      const long v = std::lround(255.0 * std::clamp(level, 0.0, 1.0));
      pixels[i * n + j] = static_cast<char>(static_cast<unsigned char>(v));
    }
  }
  auto out = open_output(path, true);
  out << "P5\n" << n << ' ' << n << "\n255\n";
  out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
  finish(out, path);
}

void save_residual_csv(const EmbeddingReport& report, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "d,r\n";
  for (std::size_t d = 0; d < report.residual_variance.size(); ++d) {
    out << d + 1 << ',' << format_double(report.residual_variance[d]) << '\n';
  }
  finish(out, path);
}

void save_embedding_csv(const EmbeddingReport& report, int dimension,
                        const std::filesystem::path& path) {
  if (dimension < 1 || dimension > static_cast<int>(report.embeddings.size())) {
    fail("no embedding of dimension " + std::to_string(dimension));
  }
  const Eigen::MatrixXd& e = report.embeddings[static_cast<std::size_t>(dimension - 1)];
  auto out = open_output(path);
  out << "point";
  for (int d = 1; d <= dimension; ++d) out << ",x" << d;
  out << '\n';
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    out << i + 1;
    for (Eigen::Index d = 0; d < e.cols(); ++d) out << ',' << format_double(e(i, d));
    out << '\n';
  }
  finish(out, path);
}

void save_segments_csv(const PhaseSegmentation& segmentation, const SegmentReports& reports,
                       const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "start,end,mean_x,label,d\n";
  for (std::size_t k = 0; k < segmentation.segments.size(); ++k) {
    const Segment& s = segmentation.segments[k];
    const int d = k < reports.per_segment.size() && reports.per_segment[k]
                      ? reports.per_segment[k]->dimension
                      : 0;
    out << s.first << ',' << s.last << ',' << format_double(s.mean) << ',' << s.label << ','
        << d << '\n';
  }
  finish(out, path);
}

void save_correspondence_csv(std::span<const CorrespondenceMap> maps,
                             const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "t,source,target,in_domain,vx,vy\n";
  for (const CorrespondenceMap& m : maps) {
    for (std::size_t i = 0; i < m.permutation.size(); ++i) {
      out << m.step << ',' << i + 1 << ',' << m.permutation[i] + 1 << ','
          << (m.in_domain[i] ? 1 : 0) << ',' << format_double(m.velocities[i].x) << ','
          << format_double(m.velocities[i].y) << '\n';
    }
  }
  finish(out, path);
}

}  // namespace swarmfold
