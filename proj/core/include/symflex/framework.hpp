#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "symflex/linalg.hpp"

namespace symflex {

/// Unordered vertex pair, 0-based, normalized so that first < second.
struct Edge {
  int first = 0;
  int second = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple graph with a fixed edge order. Rows of every rigidity matrix follow
/// that order.
class Graph {
public:
  Graph() = default;
  /// Throws InvalidArgument on loops, duplicates or out-of-range indices.
  Graph(int vertex_count, std::vector<Edge> edges);

  static Graph complete(int vertex_count);

  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int index) const { return edges_.at(static_cast<std::size_t>(index)); }

  /// Index of edge {u, v} or -1.
  int find_edge(int u, int v) const;
  bool has_edge(int u, int v) const { return find_edge(u, v) >= 0; }
  bool is_complete() const noexcept;

private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> adjacency_;  // n*n, edge index or -1
};

/// n points in R^d stored vertex-major: point i occupies slots d*i .. d*i+d-1.
class Configuration {
public:
  Configuration() = default;
  /// Throws InvalidArgument on non-finite data or a length not divisible by dim.
  Configuration(int dim, Eigen::VectorXd flat);
  static Configuration from_points(const std::vector<std::vector<double>>& points);

  int dim() const noexcept { return dim_; }
  int point_count() const noexcept { return dim_ == 0 ? 0 : static_cast<int>(flat_.size()) / dim_; }
  const Eigen::VectorXd& flat() const noexcept { return flat_; }
  Eigen::VectorXd point(int i) const { return flat_.segment(static_cast<Eigen::Index>(dim_) * i, dim_); }

  /// Largest distance of a point from the centroid; 1 for a single point or
  /// coincident points.
  double scale() const;

  /// Dimension of the affine hull of the points.
  int affine_span_dimension(double relative = 1e-9) const;

private:
  int dim_ = 0;
  Eigen::VectorXd flat_;
};

/// The pair (G, p). Adjacent coincident joints are allowed; they give zero rows
/// and are listed by zero_length_edges().
class Framework {
public:
  Framework() = default;
  /// Throws InvalidArgument when the configuration has the wrong number of points.
  Framework(Graph graph, Configuration config);

  const Graph& graph() const noexcept { return graph_; }
  const Configuration& config() const noexcept { return config_; }
  int dim() const noexcept { return config_.dim(); }

  /// Edge indices whose endpoints coincide (zero rows of the rigidity matrix).
  std::vector<int> zero_length_edges(double relative = 1e-12) const;

private:
  Graph graph_;
  Configuration config_;
};

/// Squared bar lengths ||p_i - p_j||^2 in edge order.
Eigen::VectorXd edge_function(const Graph& graph, const Configuration& config);

/// The m x dn rigidity matrix: row {i,j} holds p_i - p_j in block i and
/// p_j - p_i in block j. Equals half the Jacobian of edge_function.
Eigen::MatrixXd rigidity_matrix(const Graph& graph, const Configuration& config);

struct RigidMotionBasis {
  /// dn x C(d+1,2) matrix: d translations followed by the rotations S p for
  /// each elementary skew-symmetric S (axis pairs (a,b), a < b).
  Eigen::MatrixXd generators;
  /// Rank of the generator set.
  int rank = 0;
  /// Set when the generators are linearly dependent (points span less than d-1 dimensions).
  bool possibly_dependent = false;
};

RigidMotionBasis rigid_motion_basis(const Configuration& config, double relative = 1e-9);

/// Orthonormal basis of the infinitesimal rigid motions of the configuration.
Eigen::MatrixXd rigid_motion_space(const Configuration& config, double relative = 1e-9);

enum class RigidityVerdict { InfinitesimallyRigid, InfinitesimallyFlexible };

struct RigidityResult {
  RigidityVerdict verdict = RigidityVerdict::InfinitesimallyFlexible;
  RankReport rank;
  int expected_rank = 0;  ///< d*n - C(d+1,2)
  bool complete_and_affinely_independent = false;
};

/// Rigid iff rank R = d*n - C(d+1,2), or G is complete with affinely independent points.
RigidityResult infinitesimal_rigidity_test(const Framework& fw, double relative = Tolerances{}.rank_relative);

/// C(d+1, 2): dimension of the Euclidean motion group of R^d.
constexpr int rigid_motion_dimension(int d) { return d * (d + 1) / 2; }

}  // namespace symflex
