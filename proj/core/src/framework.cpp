#include "symflex/framework.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "symflex/error.hpp"

namespace symflex {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Graph::Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
  if (vertex_count < 1) throw InvalidArgument("graph needs at least one vertex");
  adjacency_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), -1);
  edges_.reserve(edges.size());
  for (auto e : edges) {
    if (e.first < 0 || e.second < 0 || e.first >= n_ || e.second >= n_)
      throw InvalidArgument("edge {" + std::to_string(e.first + 1) + "," + std::to_string(e.second + 1) +
                            "} references a vertex outside 1.." + std::to_string(n_));
    if (e.first == e.second) throw InvalidArgument("loop at vertex " + std::to_string(e.first + 1));
    if (e.first > e.second) std::swap(e.first, e.second);
    auto& slot = adjacency_[static_cast<std::size_t>(e.first * n_ + e.second)];
    if (slot >= 0)
      throw InvalidArgument("duplicate edge {" + std::to_string(e.first + 1) + "," +
                            std::to_string(e.second + 1) + "}");
    slot = static_cast<int>(edges_.size());
    adjacency_[static_cast<std::size_t>(e.second * n_ + e.first)] = slot;
    edges_.push_back(e);
  }
}

Graph Graph::complete(int vertex_count) {
  std::vector<Edge> edges;
  for (int i = 0; i < vertex_count; ++i)
    for (int j = i + 1; j < vertex_count; ++j) edges.push_back({i, j});
  return Graph(vertex_count, std::move(edges));
}

int Graph::find_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
  return adjacency_[static_cast<std::size_t>(u * n_ + v)];
}

bool Graph::is_complete() const noexcept {
  return static_cast<long>(edges_.size()) == static_cast<long>(n_) * (n_ - 1) / 2;
}

Configuration::Configuration(int dim, VectorXd flat) : dim_(dim), flat_(std::move(flat)) {
  if (dim < 1) throw InvalidArgument("configuration dimension must be positive");
  if (flat_.size() % dim != 0)
    throw InvalidArgument("coordinate vector length " + std::to_string(flat_.size()) +
                          " is not a multiple of the dimension " + std::to_string(dim));
  if (!flat_.allFinite()) throw InvalidArgument("configuration has non-finite coordinates");
}

Configuration Configuration::from_points(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw InvalidArgument("configuration needs at least one point");
  const int d = static_cast<int>(points.front().size());
  VectorXd flat(static_cast<Eigen::Index>(points.size()) * d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (static_cast<int>(points[i].size()) != d)
      throw InvalidArgument("point " + std::to_string(i + 1) + " has " + std::to_string(points[i].size()) +
                            " coordinates, expected " + std::to_string(d));
    for (int k = 0; k < d; ++k) flat(static_cast<Eigen::Index>(i) * d + k) = points[i][static_cast<std::size_t>(k)];
  }
  return Configuration(d, std::move(flat));
}

double Configuration::scale() const {
  const int n = point_count();
  if (n == 0) return 1.0;
  VectorXd centroid = VectorXd::Zero(dim_);
  for (int i = 0; i < n; ++i) centroid += point(i);
  centroid /= n;
  double r = 0.0;
  for (int i = 0; i < n; ++i) r = std::max(r, (point(i) - centroid).norm());
  return r > 0.0 ? r : 1.0;
}

int Configuration::affine_span_dimension(double relative) const {
  const int n = point_count();
  if (n <= 1) return 0;
  MatrixXd diffs(dim_, n - 1);
  for (int i = 1; i < n; ++i) diffs.col(i - 1) = point(i) - point(0);
  // Scale-relative cutoff: coincident points must give dimension 0.
  return rank_with_tolerance(diffs, relative * scale()).rank;
}

Framework::Framework(Graph graph, Configuration config) : graph_(std::move(graph)), config_(std::move(config)) {
  if (config_.point_count() != graph_.vertex_count())
    throw InvalidArgument("configuration has " + std::to_string(config_.point_count()) + " points but the graph has " +
                          std::to_string(graph_.vertex_count()) + " vertices");
}

std::vector<int> Framework::zero_length_edges(double relative) const {
  std::vector<int> out;
  const double cutoff = relative * config_.scale();
  for (int k = 0; k < graph_.edge_count(); ++k) {
    const auto& e = graph_.edge(k);
    if ((config_.point(e.first) - config_.point(e.second)).norm() <= cutoff) out.push_back(k);
  }
  return out;
}

namespace {

void require_match(const Graph& graph, const Configuration& config) {
  if (config.point_count() != graph.vertex_count())
    throw InvalidArgument("configuration has " + std::to_string(config.point_count()) + " points but the graph has " +
                          std::to_string(graph.vertex_count()) + " vertices");
}

}  // namespace

VectorXd edge_function(const Graph& graph, const Configuration& config) {
  require_match(graph, config);
  VectorXd out(graph.edge_count());
  for (int k = 0; k < graph.edge_count(); ++k) {
    const auto& e = graph.edge(k);
    out(k) = (config.point(e.first) - config.point(e.second)).squaredNorm();
  }
  return out;
}

MatrixXd rigidity_matrix(const Graph& graph, const Configuration& config) {
  require_match(graph, config);
  const int d = config.dim();
  MatrixXd r = MatrixXd::Zero(graph.edge_count(), static_cast<Eigen::Index>(d) * graph.vertex_count());
  for (int k = 0; k < graph.edge_count(); ++k) {
    const auto& e = graph.edge(k);
    const VectorXd diff = config.point(e.first) - config.point(e.second);
    r.block(k, static_cast<Eigen::Index>(d) * e.first, 1, d) = diff.transpose();
    r.block(k, static_cast<Eigen::Index>(d) * e.second, 1, d) = -diff.transpose();
  }
  return r;
}

RigidMotionBasis rigid_motion_basis(const Configuration& config, double relative) {
  const int d = config.dim();
  const int n = config.point_count();
  const int count = rigid_motion_dimension(d);
  RigidMotionBasis out;
  out.generators = MatrixXd::Zero(static_cast<Eigen::Index>(d) * n, count);
  int col = 0;
  for (int k = 0; k < d; ++k, ++col)
    for (int i = 0; i < n; ++i) out.generators(static_cast<Eigen::Index>(d) * i + k, col) = 1.0;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b, ++col) {
      // S = E_ab - E_ba, so (S p)_a = p_b and (S p)_b = -p_a.
      for (int i = 0; i < n; ++i) {
        const auto pi = config.point(i);
        out.generators(static_cast<Eigen::Index>(d) * i + a, col) = pi(b);
        out.generators(static_cast<Eigen::Index>(d) * i + b, col) = -pi(a);
      }
    }
  }
  // Compare against the translation block so a degenerate rotation block is detected.
  const double reference = std::max(1.0, config.scale()) * std::sqrt(static_cast<double>(n));
  out.rank = rank_with_tolerance(out.generators, relative * reference).rank;
  out.possibly_dependent = out.rank < count;
  return out;
}

MatrixXd rigid_motion_space(const Configuration& config, double relative) {
  const auto basis = rigid_motion_basis(config, relative);
  const double reference = std::max(1.0, config.scale()) * std::sqrt(static_cast<double>(config.point_count()));
  const double smax = spectral_norm(basis.generators);
  return column_basis(basis.generators, smax > 0.0 ? relative * reference / smax : relative);
}

RigidityResult infinitesimal_rigidity_test(const Framework& fw, double relative) {
  RigidityResult out;
  const int d = fw.dim();
  const int n = fw.graph().vertex_count();
  out.rank = relative_rank(rigidity_matrix(fw.graph(), fw.config()), relative);
  out.expected_rank = d * n - rigid_motion_dimension(d);
  out.complete_and_affinely_independent =
      fw.graph().is_complete() && fw.config().affine_span_dimension(relative) == n - 1;
  const bool rigid = (out.expected_rank >= 0 && out.rank.rank == out.expected_rank) ||
                     out.complete_and_affinely_independent;
  out.verdict = rigid ? RigidityVerdict::InfinitesimallyRigid : RigidityVerdict::InfinitesimallyFlexible;
  return out;
}

}  // namespace symflex
