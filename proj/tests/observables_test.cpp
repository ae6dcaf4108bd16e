#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "swarmfold/error.hpp"
#include "swarmfold/observables.hpp"

using namespace swarmfold;
using namespace swarmfold::testing;

namespace {

CorrespondenceMap with_mean(Vec2 mean) {
  CorrespondenceMap m;
  m.group_mean = mean;
  return m;
}

}  // namespace

TEST_CASE("normalized group speed") {
  std::vector<CorrespondenceMap> constant(4, with_mean({0.0, 0.07}));
  for (double s : group_speed_series(constant)) CHECK(s == 1.0);

  const std::vector<CorrespondenceMap> sw{with_mean({0.05, 0}), with_mean({0, 0.1}),
                                          with_mean({-0.05, 0})};
  const auto s = group_speed_series(sw);
  CHECK(s[0] == doctest::Approx(0.5));
  CHECK(s[1] == 1.0);
  CHECK(s[2] == doctest::Approx(0.5));

  Warnings w;
  const auto still = group_speed_series(std::vector<CorrespondenceMap>(3), &w);
  CHECK(still == std::vector<double>{0, 0, 0});
  CHECK(w.size() == 1);

  const auto streamed = group_speed_series(sw, nullptr, 0.2);
  CHECK(streamed[1] == doctest::Approx(0.5));
}

TEST_CASE("polarization") {
  const std::vector<Vec2> aligned{{1, 1}, {2, 2}, {0.1, 0.1}};
  CHECK(polarization(aligned) == doctest::Approx(1.0));
  CHECK(polarization(std::vector<Vec2>{{1, 0}, {-3, 0}}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(polarization(std::vector<Vec2>{{1, 0}, {0, 2}, {-1, 0}}) == doctest::Approx(1.0 / 3.0));
  // stationary agents carry no heading
  CHECK(polarization(std::vector<Vec2>{{1, 0}, {0, 0}}) == 1.0);
  Warnings w;
  CHECK(polarization(std::vector<Vec2>{{0, 0}, {0, 0}}, &w) == 0.0);
  CHECK(w.size() == 1);
}

TEST_CASE("interaction radius") {
  const std::vector<Configuration> pair{{{0, 0}, {0, 2.5}}, {{1, 1}, {3.5, 1}}};
  CHECK(interaction_epsilon(pair, EpsilonMode::all_pairs) == doctest::Approx(2.5));
  CHECK(interaction_epsilon(pair, EpsilonMode::nearest_neighbor) == doctest::Approx(2.5));

  const std::vector<Configuration> line{{{0, 0}, {1, 0}, {3, 0}}};
  CHECK(interaction_epsilon(line, EpsilonMode::all_pairs) == doctest::Approx(2.0));
  CHECK(interaction_epsilon(line, EpsilonMode::nearest_neighbor) == doctest::Approx(4.0 / 3.0));

  Rng rng(2);
  std::vector<Configuration> frames;
  for (int t = 0; t < 5; ++t) frames.push_back(random_configuration(rng, 9, 3.0));
  std::vector<Configuration> doubled = frames;
  doubled.insert(doubled.end(), frames.begin(), frames.end());
  for (EpsilonMode m : {EpsilonMode::all_pairs, EpsilonMode::nearest_neighbor}) {
    CHECK(interaction_epsilon(doubled, m) == doctest::Approx(interaction_epsilon(frames, m)));
  }

  const std::vector<Configuration> lone{{{0, 0}}};
  CHECK_THROWS_WITH(interaction_epsilon(lone), "observables: interaction radius needs at least 2 agents");
  CHECK(parse_epsilon_mode("nearest_neighbor") == EpsilonMode::nearest_neighbor);
  CHECK_THROWS_AS(parse_epsilon_mode("median"), Error);
}

TEST_CASE("connected components") {
  Configuration chain;
  for (int i = 0; i < 10; ++i) chain.push_back({0.9 * i, 0.0});
  CHECK(connected_components(chain, 1.0) == 1);

  const double eps = 1.0;
  Configuration clusters;
  for (int i = 0; i < 5; ++i) clusters.push_back({eps / 10 * i, 0.0});
  for (int i = 0; i < 5; ++i) clusters.push_back({10 * eps + eps / 10 * i, 0.0});
  CHECK(connected_components(clusters, eps) == 2);

  Configuration sparse;
  for (int i = 0; i < 7; ++i) sparse.push_back({3.0 * i, 0.0});
  CHECK(connected_components(sparse, 1.0) == 7);
}

TEST_CASE("connected components agree with a dense flood fill") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Configuration c = random_configuration(rng, 30, 4.0);
    const double eps = rng.uniform(0.2, 1.5);
    std::vector<int> label(c.size(), -1);
    int count = 0;
    for (std::size_t s = 0; s < c.size(); ++s) {
      if (label[s] >= 0) continue;
      std::vector<std::size_t> stack{s};
      label[s] = count;
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < c.size(); ++v)
          if (label[v] < 0 && norm(c[v] - c[u]) <= eps) {
            label[v] = count;
            stack.push_back(v);
          }
      }
      ++count;
    }
    CHECK(connected_components(c, eps) == count);
  }
}

TEST_CASE("coarse observable") {
  const Weights third;
  CHECK(coarse_observable(1, 1, 50, 50, third) == 1.0);
  CHECK(coarse_observable(1, 1, 1, 50, third) == doctest::Approx(2.02 / 3.0).epsilon(1e-14));
  CHECK(coarse_observable(1, 1, 1, 50, third) == doctest::Approx(0.67333).epsilon(1e-5));
  CHECK(coarse_observable(0.37, 0.9, 4, 10, Weights{1.0, 0.0}) == 0.37);
  CHECK_THROWS_AS(coarse_observable(1, 1, 1, 1, Weights{0.7, 0.7}), Error);
  CHECK_THROWS_AS(coarse_observable(1, 1, 1, 1, Weights{-0.1, 0.5}), Error);
}

TEST_CASE("coarse observable stays in the unit interval") {
  Rng rng(13);
  for (int k = 0; k < 2000; ++k) {
    const double xi1 = rng.canonical();
    const Weights w{xi1, rng.canonical() * (1 - xi1)};
    const int n = 1 + static_cast<int>(rng.canonical() * 60);
    const int c = 1 + static_cast<int>(rng.canonical() * n);
    const double x = coarse_observable(rng.canonical(), rng.canonical(), c, n, w);
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("distance matrix") {
  const std::vector<double> x{0.2, 0.9};
  const DistanceMatrix d = distance_matrix(x);
  CHECK(d(0, 0) == 0.0);
  CHECK(d(0, 1) == doctest::Approx(0.7));
  CHECK(d.max() == doctest::Approx(0.7));

  Rng rng(14);
  std::vector<double> series(60);
  for (double& v : series) v = rng.canonical();
  const DistanceMatrix m = distance_matrix(series);
  for (std::size_t i = 0; i < series.size(); ++i)
    for (std::size_t j = 0; j < series.size(); ++j) {
      CHECK(m(i, j) == m(j, i));
      CHECK(m(i, j) >= 0.0);
      for (std::size_t k = 0; k < series.size(); ++k) CHECK(m(i, k) <= m(i, j) + m(j, k));
    }
}

TEST_CASE("series from a translating group") {
  Rng rng(15);
  const TrajectoryDataset d = translating_group(rng, 16, 10, {0.05, 0.0});
  Warnings w;
  const ObservableSeries s = compute_observables(d, velocities(d).maps, {}, &w);
  CHECK(s.size() == 9);
  for (std::size_t t = 0; t < s.size(); ++t) {
    CHECK(s.speed[t] == doctest::Approx(1.0));
    CHECK(s.polarization[t] == doctest::Approx(1.0));
    CHECK(s.components[t] == s.components[0]);
  }
  CHECK(w.empty());
}
