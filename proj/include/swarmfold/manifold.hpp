#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "swarmfold/error.hpp"
#include "swarmfold/geometry.hpp"

namespace swarmfold {

// Symmetrised k-nearest-neighbour graph over the rows of a point matrix.
struct NeighborGraph {
  struct Edge {
    int to;
    double weight;
  };

  int k = 0;  // neighbour count actually used after connectivity repair
  std::vector<std::vector<Edge>> adjacency;

  std::size_t vertex_count() const { return adjacency.size(); }
  bool connected() const;
};

struct IsomapParams {
  int k = 7;
  int max_dimension = 10;
  double threshold = 0.1;
};

struct EmbeddingReport {
  Eigen::MatrixXd geodesic;
  // embeddings[d - 1] has d columns; columns are shared across dimensions.
  std::vector<Eigen::MatrixXd> embeddings;
  std::vector<double> residual_variance;  // r(d) for d = 1..max_dimension
  int dimension = 0;
  double threshold = 0.0;
  int k = 0;
  Warnings warnings;
};

// Rows are points. Distances are plain Euclidean.
NeighborGraph knn_graph(const Eigen::MatrixXd& points, int k);

// All-pairs shortest paths, one Dijkstra sweep per source.
Eigen::MatrixXd geodesic_distances(const NeighborGraph& graph);

// Top-d classical MDS coordinates (rows are points). Each axis is signed so its
// largest-magnitude entry is positive.
Eigen::MatrixXd classical_mds(const Eigen::MatrixXd& distances, int dimension,
                              Warnings* warnings = nullptr);

// 1 - rho², rho the correlation of upper-triangle geodesic and embedded distances.
double residual_variance(const Eigen::MatrixXd& geodesic, const Eigen::MatrixXd& embedding,
                         Warnings* warnings = nullptr);

// Smallest d with r(d) <= threshold, else the largest d.
int estimate_dimension(std::span<const double> curve, double threshold,
                       Warnings* warnings = nullptr);

EmbeddingReport isomap(const Eigen::MatrixXd& points, const IsomapParams& params = {});

// One configuration per row, laid out [x1 y1 x2 y2 ...].
Eigen::MatrixXd stack_configurations(std::span<const Configuration> frames);

}  // namespace swarmfold
