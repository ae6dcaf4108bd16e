#include <doctest.h>

#include "oracles.hpp"
#include "swarmfold/error.hpp"
#include "swarmfold/segment.hpp"

using namespace swarmfold;
using namespace swarmfold::testing;

namespace {

std::vector<double> blocks(std::initializer_list<std::pair<int, double>> parts) {
  std::vector<double> x;
  for (auto [n, v] : parts) x.insert(x.end(), static_cast<std::size_t>(n), v);
  return x;
}

Segment seg(int first, int last, double mean) { return {first, last, mean, 0, 0}; }

}  // namespace

TEST_CASE("constant series is one segment") {
  const auto s = segment_series(std::vector<double>(40, 0.4), 10);
  REQUIRE(s.size() == 1);
  CHECK(s[0].first == 1);
  CHECK(s[0].last == 40);
  CHECK(s[0].mean == doctest::Approx(0.4));
}

TEST_CASE("step series splits at the steps") {
  const auto s = segment_series(blocks({{50, 0.0}, {50, 1.0}, {50, 0.0}}), 10);
  REQUIRE(s.size() == 3);
  CHECK(s[0].first == 1);
  CHECK(s[0].last == 50);
  CHECK(s[1].first == 51);
  CHECK(s[1].last == 100);
  CHECK(s[2].first == 101);
  CHECK(s[2].last == 150);
  CHECK(s[1].regime == 1);
}

TEST_CASE("short excursions are absorbed") {
  const auto spike = segment_series(blocks({{40, 0.2}, {3, 0.9}, {40, 0.2}}), 10);
  REQUIRE(spike.size() == 1);
  CHECK(spike[0].last == 83);

  // a short leading run joins its only neighbour
  const auto s = segment_series(blocks({{5, 1.0}, {40, 0.0}, {40, 1.0}}), 10);
  REQUIRE(s.size() == 2);
  CHECK(s[0].last == 45);
  CHECK(s[0].mean == doctest::Approx(5.0 / 45.0));
  CHECK(s[1].first == 46);
}

TEST_CASE("segments tile the series and respect the minimum length") {
  Rng rng(81);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 30 + static_cast<int>(rng.canonical() * 170);
    std::vector<double> x(static_cast<std::size_t>(n));
    double level = rng.canonical();
    for (double& v : x) {
      if (rng.canonical() < 0.05) level = rng.canonical();
      v = level + rng.uniform(-0.05, 0.05);
    }
    const int min_len = 1 + static_cast<int>(rng.canonical() * 14);
    const auto s = segment_series(x, min_len);
    CHECK(s.front().first == 1);
    CHECK(s.back().last == n);
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s.size() > 1) CHECK(s[k].length() >= min_len);
      if (k > 0) {
        CHECK(s[k].first == s[k - 1].last + 1);
        CHECK(s[k].regime != s[k - 1].regime);
      }
    }
  }
}

TEST_CASE("segmentation is invariant to shifting the series") {
  Rng rng(82);
  std::vector<double> x = blocks({{35, 0.3}, {40, 0.7}, {30, 0.3}, {20, 0.7}});
  for (double& v : x) v += rng.uniform(-0.05, 0.05);
  std::vector<double> shifted = x;
  for (double& v : shifted) v += 0.125;
  const auto a = segment_series(x, 10);
  const auto b = segment_series(shifted, 10);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].first == b[k].first);
    CHECK(a[k].last == b[k].last);
  }
}

TEST_CASE("series too short for the minimum length") {
  CHECK_THROWS_AS(segment_series(std::vector<double>(15, 0.0), 10), Error);
}

TEST_CASE("manifold labels") {
  const auto three = label_manifolds({seg(1, 50, 0.3), seg(51, 100, 0.8), seg(101, 150, 0.3)}, 0.1);
  CHECK(three.segments[0].label == 1);
  CHECK(three.segments[1].label == 2);
  CHECK(three.segments[2].label == 1);
  CHECK(three.label_count == 2);

  const auto close = label_manifolds({seg(1, 5, 0.30), seg(6, 9, 0.35), seg(10, 12, 0.38)}, 0.1);
  CHECK(close.label_count == 1);

  const auto strict = label_manifolds({seg(1, 5, 0.30), seg(6, 9, 0.35), seg(10, 12, 0.38)}, 0.0);
  CHECK(strict.label_count == 3);

  CHECK_THROWS_AS(label_manifolds({seg(1, 5, 0.3)}, -1.0), Error);
}

TEST_CASE("per-segment isomap") {
  Rng rng(83);
  std::vector<Configuration> frames;
  Configuration c = random_configuration(rng, 6, 2.0);
  for (int t = 0; t < 40; ++t) {
    for (auto& p : c) p += Vec2{0.01 + rng.uniform(-0.02, 0.02), rng.uniform(-0.02, 0.02)};
    frames.push_back(c);
  }

  SUBCASE("one segment reproduces the full report") {
    PhaseSegmentation p;
    p.segments = {seg(1, 40, 0.5)};
    const SegmentReports r = per_segment_isomap(frames, p);
    REQUIRE(r.per_segment[0]);
    CHECK(r.per_segment[0]->residual_variance == r.full.residual_variance);
    CHECK(r.per_segment[0]->dimension == r.full.dimension);
    CHECK(r.per_segment[0]->geodesic == r.full.geodesic);
  }
  SUBCASE("tiny segments are skipped") {
    PhaseSegmentation p;
    p.segments = {seg(1, 2, 0.5), seg(3, 40, 0.6)};
    const SegmentReports r = per_segment_isomap(frames, p);
    CHECK_FALSE(r.per_segment[0]);
    CHECK(r.per_segment[1]);
    CHECK(r.warnings.size() == 1);
  }
}

TEST_CASE("more than two regimes") {
  const auto x = blocks({{30, 0.0}, {30, 0.5}, {30, 1.0}, {30, 0.5}});
  const auto two = segment_series(x, 10);
  const auto three = segment_series(x, 10, 3);
  REQUIRE(three.size() == 4);
  CHECK(three[0].regime == 0);
  CHECK(three[1].regime == 1);
  CHECK(three[2].regime == 2);
  CHECK(three[3].regime == 1);
  CHECK(three[2].first == 61);
  CHECK(two.size() < three.size());
  CHECK_THROWS_AS(segment_series(x, 10, 1), Error);
}
