#include "swarmfold/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include <Eigen/Eigenvalues>

#include "swarmfold/union_find.hpp"

namespace swarmfold {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("manifold", message); }

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (points.row(i) - points.row(j)).norm();
    }
  }
  return d;
}

}  // namespace

bool NeighborGraph::connected() const {
  UnionFind sets(adjacency.size());
  for (std::size_t i = 0; i < adjacency.size(); ++i) {
    for (const Edge& e : adjacency[i]) sets.unite(i, static_cast<std::size_t>(e.to));
  }
  return sets.set_count() <= 1;
}

NeighborGraph knn_graph(const Eigen::MatrixXd& points, int k) {
  const auto n = static_cast<int>(points.rows());
  if (n < 2) fail("neighbour graph needs at least 2 points, got " + std::to_string(n));
  if (k < 1) fail("neighbour count k must be >= 1");

  const Eigen::MatrixXd dist = pairwise_distances(points);
  // neighbours of each vertex by (distance, index)
  std::vector<std::vector<int>> ranked(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& r = ranked[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      if (j != i) r.push_back(j);
    }
    std::sort(r.begin(), r.end(), [&](int a, int b) {
      return dist(i, a) < dist(i, b) || (dist(i, a) == dist(i, b) && a < b);
    });
  }

  NeighborGraph g;
  for (int kk = std::min(k, n - 1);; ++kk) {
    std::vector<std::vector<bool>> linked(static_cast<std::size_t>(n),
                                          std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i) {
      for (int m = 0; m < kk; ++m) {
        const int j = ranked[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
        linked[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
        linked[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
      }
    }
    g.k = kk;
    g.adjacency.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (linked[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
          g.adjacency[static_cast<std::size_t>(i)].push_back({j, dist(i, j)});
        }
      }
    }
    if (g.connected() || kk >= n - 1) break;
  }
  return g;
}

Eigen::MatrixXd geodesic_distances(const NeighborGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd out(n, n);
  using Item = std::pair<double, int>;
  for (Eigen::Index s = 0; s < n; ++s) {
    std::vector<double> best(static_cast<std::size_t>(n), kInf);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    best[static_cast<std::size_t>(s)] = 0.0;
    queue.push({0.0, static_cast<int>(s)});
    while (!queue.empty()) {
      const auto [d, u] = queue.top();
      queue.pop();
      if (d > best[static_cast<std::size_t>(u)]) continue;
      for (const auto& e : graph.adjacency[static_cast<std::size_t>(u)]) {
        const double cand = d + e.weight;
        if (cand < best[static_cast<std::size_t>(e.to)]) {
          best[static_cast<std::size_t>(e.to)] = cand;
          queue.push({cand, e.to});
        }
      }
    }
    for (Eigen::Index t = 0; t < n; ++t) {
      if (best[static_cast<std::size_t>(t)] == kInf) fail("graph is disconnected");
      out(s, t) = best[static_cast<std::size_t>(t)];
    }
  }
  // symmetrise: path sums from either end can differ in the last bit
  const Eigen::MatrixXd sym = out.cwiseMin(out.transpose());
  return sym;
}

Eigen::MatrixXd classical_mds(const Eigen::MatrixXd& distances, int dimension,
                              Warnings* warnings) {
  const Eigen::Index n = distances.rows();
  if (distances.cols() != n) fail("distance matrix must be square");
  if (dimension < 1 || dimension > std::max<Eigen::Index>(n - 1, 1)) {
    fail("embedding dimension " + std::to_string(dimension) + " outside 1.." +
         std::to_string(n - 1));
  }

  // B = -1/2 J D² J
  const Eigen::MatrixXd squared = distances.cwiseProduct(distances);
  const Eigen::VectorXd row_mean = squared.rowwise().mean();
  const Eigen::VectorXd col_mean = squared.colwise().mean().transpose();
  const double grand = squared.mean();
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      gram(i, j) = -0.5 * (squared(i, j) - row_mean(i) - col_mean(j) + grand);
    }
  }
  gram = 0.5 * (gram + gram.transpose());

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) fail("eigendecomposition did not converge");
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd& vectors = solver.eigenvectors();

  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(n, dimension);
  int padded = 0;
  for (int a = 0; a < dimension; ++a) {
    const Eigen::Index col = n - 1 - a;
    const double lambda = values(col);
    if (!(lambda > 1e-12 * scale)) {
      ++padded;
      continue;
    }
    Eigen::VectorXd v = vectors.col(col);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    coords.col(a) = v * std::sqrt(lambda);
  }
  if (padded > 0) {
    warn(warnings, std::to_string(padded) + " of " + std::to_string(dimension) +
                       " embedding axes have no positive eigenvalue; padded with zeros");
  }
  return coords;
}

double residual_variance(const Eigen::MatrixXd& geodesic, const Eigen::MatrixXd& embedding,
                         Warnings* warnings) {
  const Eigen::Index n = geodesic.rows();
  if (geodesic.cols() != n || embedding.rows() != n) {
    fail("residual variance: geodesic and embedding sizes differ");
  }
  // two-pass means/covariances over the upper triangle
  double mean_g = 0.0, mean_e = 0.0;
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      mean_g += geodesic(i, j);
      mean_e += (embedding.row(i) - embedding.row(j)).norm();
      ++count;
    }
  }
  if (count == 0) {
    warn(warnings, "fewer than two points; residual variance set to 0");
    return 0.0;
  }
  mean_g /= static_cast<double>(count);
  mean_e /= static_cast<double>(count);
  double sgg = 0.0, see = 0.0, sge = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double g = geodesic(i, j) - mean_g;
      const double e = (embedding.row(i) - embedding.row(j)).norm() - mean_e;
      sgg += g * g;
      see += e * e;
      sge += g * e;
    }
  }
  if (sgg == 0.0 || see == 0.0) {
    warn(warnings, "distance vector has zero variance; residual variance set to 0");
    return 0.0;
  }
  const double rho = sge / std::sqrt(sgg * see);
  return std::clamp(1.0 - rho * rho, 0.0, 1.0);
}

int estimate_dimension(std::span<const double> curve, double threshold, Warnings* warnings) {
  if (curve.empty()) fail("residual curve is empty");
  if (!(threshold > 0.0 && threshold < 1.0)) fail("threshold must lie in (0, 1)");
  for (std::size_t d = 0; d < curve.size(); ++d) {
    if (curve[d] <= threshold) return static_cast<int>(d + 1);
  }
  warn(warnings, "residual variance never drops below " + std::to_string(threshold) +
                     "; reporting the largest dimension");
  return static_cast<int>(curve.size());
}

EmbeddingReport isomap(const Eigen::MatrixXd& points, const IsomapParams& params) {
  const auto n = static_cast<int>(points.rows());
  if (n < 3) fail("isomap needs at least 3 configurations, got " + std::to_string(n));
  if (params.max_dimension < 1) fail("max dimension must be >= 1");

  EmbeddingReport report;
  report.threshold = params.threshold;
  const NeighborGraph graph = knn_graph(points, params.k);
  report.k = graph.k;
  if (graph.k != std::min(params.k, n - 1)) {
    report.warnings.push_back("neighbour count raised to " + std::to_string(graph.k) +
                              " to connect the graph");
  }
  report.geodesic = geodesic_distances(graph);

  const int dmax = std::min(params.max_dimension, n - 1);
  // the largest embedding carries every smaller one in its leading columns
  const Eigen::MatrixXd full = classical_mds(report.geodesic, dmax, &report.warnings);
  for (int d = 1; d <= dmax; ++d) {
    report.embeddings.push_back(full.leftCols(d));
    report.residual_variance.push_back(
        residual_variance(report.geodesic, report.embeddings.back(), &report.warnings));
  }
  for (std::size_t d = 1; d < report.residual_variance.size(); ++d) {
    if (report.residual_variance[d] > report.residual_variance[d - 1] + 1e-9) {
      report.warnings.push_back("residual variance increases at d = " + std::to_string(d + 1));
    }
  }
  report.dimension =
      estimate_dimension(report.residual_variance, params.threshold, &report.warnings);
  return report;
}

Eigen::MatrixXd stack_configurations(std::span<const Configuration> frames) {
  const std::size_t n = frames.empty() ? 0 : frames.front().size();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(frames.size()), static_cast<Eigen::Index>(2 * n));
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (frames[t].size() != n) fail("configurations differ in agent count");
    for (std::size_t i = 0; i < n; ++i) {
      out(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(2 * i)) = frames[t][i].x;
      out(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(2 * i + 1)) = frames[t][i].y;
    }
  }
  return out;
}

}  // namespace swarmfold
