#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "oracles.hpp"
#include "swarmfold/error.hpp"
#include "swarmfold/io.hpp"
#include "swarmfold/sim.hpp"

using namespace swarmfold;
using namespace swarmfold::testing;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "swarmfold_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Pixel payload of a P5 file written by save_distance_image.
std::vector<unsigned char> pixels(const std::filesystem::path& p, std::size_t& width) {
  std::ifstream in(p, std::ios::binary);
  std::string magic;
  std::size_t h = 0;
  int maxval = 0;
  in >> magic >> width >> h >> maxval;
  in.get();
  std::vector<unsigned char> px(width * h);
  in.read(reinterpret_cast<char*>(px.data()), static_cast<std::streamsize>(px.size()));
  CHECK(magic == "P5");
  CHECK(maxval == 255);
  CHECK(width == h);
  return px;
}

}  // namespace

TEST_CASE("parse a small trajectory") {
  std::istringstream in("t,x,y\n1,0,0\n1,1,0\n2,0.5,0\n2,1.5,0\n");
  const TrajectoryDataset d = parse_trajectory_csv(in);
  CHECK(d.frame_count() == 2);
  CHECK(d.agent_count() == 2);
  CHECK(d.frames[1][1] == Vec2{1.5, 0.0});
}

TEST_CASE("ids order agents within a frame") {
  std::istringstream in("t,id,x,y\n1,2,9,9\n1,1,0,0\n2,1,0.1,0\n2,2,9.1,9\n");
  const TrajectoryDataset d = parse_trajectory_csv(in);
  CHECK(d.frames[0][0] == Vec2{0.0, 0.0});
  CHECK(d.frames[0][1] == Vec2{9.0, 9.0});
}

TEST_CASE("malformed trajectories name the problem") {
  std::istringstream ragged("t,x,y\n1,0,0\n1,1,0\n2,0,0\n2,1,0\n2,2,0\n");
  CHECK_THROWS_WITH(parse_trajectory_csv(ragged), "io: frame 2: expected 2 agents, found 3");
  std::istringstream text("t,x,y\n1,0,0\n1,zero,0\n");
  CHECK_THROWS_WITH(parse_trajectory_csv(text), "io: line 3: non-numeric field 'zero'");
  CHECK_THROWS_AS(load_trajectory_csv(scratch("missing.csv")), Error);
}

TEST_CASE("trajectory round trip is exact") {
  SimParams p = noise_switch_defaults();
  p.agent_count = 7;
  const TrajectoryDataset d = simulate(scenario_noise_switch(p), 5);
  const auto path = scratch("round_trip.csv");
  save_trajectory_csv(d, path);
  const TrajectoryDataset back = load_trajectory_csv(path);
  CHECK(back.frames == d.frames);
  CHECK(back.seed == d.seed);
  CHECK(back.boundary.half_width == d.boundary.half_width);
  CHECK(back.unwrapped);

  save_trajectory_csv(d, path, true);
  const TrajectoryDataset folded = load_trajectory_csv(path);
  CHECK(folded.frames == d.wrapped_frames);
  CHECK_FALSE(folded.unwrapped);

  Rng rng(3);
  for (int k = 0; k < 1000; ++k) {
    const double v = rng.uniform(-1e6, 1e6) * rng.canonical();
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("distance image") {
  std::size_t w = 0;
  const auto zero = scratch("zero.pgm");
  save_distance_image(distance_matrix(std::vector<double>(4, 0.3)), zero);
  for (unsigned char v : pixels(zero, w)) CHECK(v == 0);
  CHECK(w == 4);

  const auto img = scratch("delta.pgm");
  const std::vector<double> x{0.1, 0.5, 0.3, 0.9, 0.2};
  save_distance_image(distance_matrix(x), img);
  const auto px = pixels(img, w);
  CHECK(px[0 * 5 + 3] == 255);
  CHECK(px[1 * 5 + 2] == 64);  // round(255 * 0.2 / 0.8)
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j) CHECK(px[i * w + j] == px[j * w + i]);

  const auto again = scratch("delta_again.pgm");
  save_distance_image(distance_matrix(x), again);
  CHECK(slurp(img) == slurp(again));
  CHECK_THROWS_AS(save_distance_image(distance_matrix(x), "/nonexistent/dir/x.pgm"), Error);
}

TEST_CASE("observable and segment tables") {
  ObservableSeries s;
  s.speed = {1.0, 0.5};
  s.polarization = {0.25, 1.0};
  s.components = {1, 3};
  s.coarse = {0.5, 0.75};
  const auto path = scratch("obs.csv");
  save_observables_csv(s, path);
  CHECK(slurp(path) == "t,speed,P,C,X\n1,1,0.25,1,0.5\n2,0.5,1,3,0.75\n");
}
