#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "symflex/error.hpp"
#include "symflex/framework.hpp"

namespace symflex {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Graph triangle() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

Configuration random_config(std::mt19937_64& rng, int d, int n) {
  std::uniform_real_distribution<double> u(-1, 1);
  VectorXd flat(d * n);
  for (Eigen::Index i = 0; i < flat.size(); ++i) flat(i) = u(rng);
  return Configuration(d, flat);
}

TEST(Graph, NormalizesAndRejectsBadEdges) {
  Graph g(3, {{2, 0}});
  EXPECT_EQ(g.edge(0), (Edge{0, 2}));
  EXPECT_EQ(g.find_edge(2, 0), 0);
  EXPECT_EQ(g.find_edge(1, 2), -1);
  EXPECT_THROW(Graph(3, {{0, 0}}), InvalidArgument);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), InvalidArgument);
  EXPECT_THROW(Graph(3, {{0, 3}}), InvalidArgument);
  EXPECT_THROW(Graph(0, {}), InvalidArgument);
  EXPECT_TRUE(Graph::complete(4).is_complete());
  EXPECT_EQ(Graph::complete(4).edge_count(), 6);
}

TEST(Configuration, RejectsBadData) {
  EXPECT_THROW(Configuration(2, VectorXd::Zero(3)), InvalidArgument);
  VectorXd bad = VectorXd::Zero(4);
  bad(1) = std::nan("");
  EXPECT_THROW(Configuration(2, bad), InvalidArgument);
  EXPECT_THROW(Configuration::from_points({{0, 0}, {1}}), InvalidArgument);
}

TEST(EdgeFunction, UnitSegment) {
  const auto p = Configuration::from_points({{0, 0}, {1, 0}});
  EXPECT_DOUBLE_EQ(edge_function(Graph(2, {{0, 1}}), p)(0), 1.0);
}

TEST(EdgeFunction, EquilateralTriangle) {
  const auto p = Configuration::from_points({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
  const VectorXd f = edge_function(triangle(), p);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(f(k), 1.0, 1e-15);
}

TEST(EdgeFunction, K3InEdgeOrder) {
  const auto p = Configuration::from_points({{0, 0}, {2, 0}, {1, 2}});
  const VectorXd f = edge_function(triangle(), p);
  EXPECT_EQ(f, (VectorXd(3) << 4, 5, 5).finished());
}

TEST(EdgeFunction, DimensionMismatchThrows) {
  const auto p = Configuration::from_points({{0, 0}, {1, 0}});
  EXPECT_THROW(edge_function(triangle(), p), InvalidArgument);
  EXPECT_THROW(rigidity_matrix(triangle(), p), InvalidArgument);
}

TEST(RigidityMatrix, SingleEdgeRow) {
  const auto p = Configuration::from_points({{0, 0}, {1, 0}});
  const MatrixXd r = rigidity_matrix(Graph(2, {{0, 1}}), p);
  EXPECT_EQ(r, (MatrixXd(1, 4) << -1, 0, 1, 0).finished());
}

TEST(RigidityMatrix, TriangleFirstRow) {
  const auto p = Configuration::from_points({{-1, 0}, {1, 0}, {0, 2}});
  const MatrixXd r = rigidity_matrix(triangle(), p);
  EXPECT_EQ(MatrixXd(r.row(0)), (MatrixXd(1, 6) << -2, 0, 2, 0, 0, 0).finished());
}

TEST(RigidityMatrix, CoincidentJointsGiveZeroRow) {
  const Framework fw(Graph(3, {{0, 1}, {1, 2}}), Configuration::from_points({{0, 0}, {0, 0}, {1, 1}}));
  EXPECT_EQ(fw.zero_length_edges(), std::vector<int>{0});
  EXPECT_EQ(rigidity_matrix(fw.graph(), fw.config()).row(0).norm(), 0.0);
}

TEST(RigidityMatrix, MatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 2;
    const auto p = random_config(rng, d, 6);
    const Graph g = Graph::complete(6);
    const auto dir = random_config(rng, d, 6).flat();
    const VectorXd exact = 2.0 * rigidity_matrix(g, p) * dir;
    const VectorXd fd = testing::edge_function_derivative(g, p, dir);
    EXPECT_LE((exact - fd).norm(), 1e-5 * p.scale());
  }
}

TEST(RigidMotions, SegmentGeneratorsAreMotions) {
  const auto p = Configuration::from_points({{0, 0}, {1, 0}});
  const auto basis = rigid_motion_basis(p);
  EXPECT_EQ(basis.generators.cols(), 3);
  EXPECT_LE((rigidity_matrix(Graph(2, {{0, 1}}), p) * basis.generators).norm(), 1e-14);
}

TEST(RigidMotions, OctahedronHasSixIndependentGenerators) {
  const auto p = Configuration::from_points({{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  const auto basis = rigid_motion_basis(p);
  EXPECT_EQ(basis.generators.cols(), 6);
  EXPECT_EQ(basis.rank, 6);
  EXPECT_FALSE(basis.possibly_dependent);
}

TEST(RigidMotions, CoincidentPointsAreFlagged) {
  const auto p = Configuration::from_points({{0.3, 0.2}, {0.3, 0.2}, {0.3, 0.2}});
  const auto basis = rigid_motion_basis(p);
  EXPECT_EQ(basis.generators.cols(), 3);
  EXPECT_EQ(basis.rank, 2);
  EXPECT_TRUE(basis.possibly_dependent);
}

TEST(Rank, TrivialCases) {
  EXPECT_EQ(rank_with_tolerance(MatrixXd::Zero(3, 4)).rank, 0);
  EXPECT_EQ(rank_with_tolerance(MatrixXd::Zero(3, 4)).nullity, 4);
  const auto id = rank_with_tolerance(MatrixXd::Identity(3, 3));
  EXPECT_EQ(id.rank, 3);
  EXPECT_EQ(id.singular_values.size(), 3u);
  EXPECT_GT(id.tolerance_used, 0.0);
  MatrixXd bad = MatrixXd::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(rank_with_tolerance(bad), InvalidArgument);
}

TEST(Rank, ExplicitToleranceCountsStrictlyAbove) {
  const MatrixXd a = Eigen::Vector3d(3, 2, 1).asDiagonal();
  EXPECT_EQ(rank_with_tolerance(a, 2.0).rank, 1);
  EXPECT_EQ(rank_with_tolerance(a, 0.5).rank, 3);
}

TEST(Rank, GenericTriangle) {
  const auto p = Configuration::from_points({{0.1, 0.3}, {1.2, -0.4}, {0.4, 1.7}});
  const auto r = rank_with_tolerance(rigidity_matrix(triangle(), p));
  EXPECT_EQ(r.rank, 3);
  EXPECT_EQ(r.nullity, 3);
}

TEST(Rigidity, TriangleIsRigid) {
  const Framework fw(triangle(), Configuration::from_points({{0.1, 0.3}, {1.2, -0.4}, {0.4, 1.7}}));
  const auto r = infinitesimal_rigidity_test(fw);
  EXPECT_EQ(r.verdict, RigidityVerdict::InfinitesimallyRigid);
  EXPECT_TRUE(r.complete_and_affinely_independent);
}

TEST(Rigidity, SquareIsFlexible) {
  const Framework fw(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}),
                     Configuration::from_points({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}));
  const auto r = infinitesimal_rigidity_test(fw);
  EXPECT_EQ(r.verdict, RigidityVerdict::InfinitesimallyFlexible);
  EXPECT_EQ(r.rank.rank, 4);
  EXPECT_EQ(r.expected_rank, 5);
}

TEST(Rigidity, K33OnACircleIsFlexible) {
  std::vector<std::vector<double>> pts;
  for (double deg : {60.0, 90.0, 120.0, 200.0, 270.0, 340.0})
    pts.push_back({1.2 * std::cos(deg * M_PI / 180), 1.2 * std::sin(deg * M_PI / 180)});
  const Framework fw(Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {1, 4}, {2, 5}, {0, 3}}),
                     Configuration::from_points(pts));
  EXPECT_EQ(infinitesimal_rigidity_test(fw).verdict, RigidityVerdict::InfinitesimallyFlexible);
}

TEST(Rigidity, RankBoundAndKernelContainment) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 2;
    const auto p = random_config(rng, d, 5);
    const MatrixXd r = rigidity_matrix(Graph::complete(5), p);
    EXPECT_LE(rank_with_tolerance(r).rank, d * 5 - rigid_motion_dimension(d));
    const auto motions = rigid_motion_basis(p).generators;
    EXPECT_LE((r * motions).norm(), 1e-10 * std::max(1.0, spectral_norm(r)));
  }
}

TEST(Rigidity, EdgeOrderDoesNotChangeRank) {
  std::mt19937_64 rng(9);
  const auto p = random_config(rng, 2, 5);
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 3}};
  const int r0 = rank_with_tolerance(rigidity_matrix(Graph(5, edges), p)).rank;
  std::shuffle(edges.begin(), edges.end(), rng);
  EXPECT_EQ(rank_with_tolerance(rigidity_matrix(Graph(5, edges), p)).rank, r0);
}

TEST(Tolerances, EnvironmentOverride) {
  ::setenv(kRankToleranceEnv, "1e-7", 1);
  EXPECT_DOUBLE_EQ(Tolerances::from_environment().rank_relative, 1e-7);
  ::setenv(kRankToleranceEnv, "abc", 1);
  EXPECT_THROW(Tolerances::from_environment(), InvalidArgument);
  ::unsetenv(kRankToleranceEnv);
  EXPECT_DOUBLE_EQ(Tolerances::from_environment().rank_relative, 1e-9);
}

TEST(Subspaces, IntersectionAndComplement) {
  MatrixXd a = MatrixXd::Identity(4, 2);  // e1, e2
  MatrixXd b(4, 2);
  b << 0, 0, 1, 0, 0, 1, 0, 0;  // e2, e3
  const MatrixXd both = subspace_intersection(a, b, 1e-8);
  ASSERT_EQ(both.cols(), 1);
  EXPECT_NEAR(std::abs(both(1, 0)), 1.0, 1e-12);
  const MatrixXd rest = orthogonal_complement_within(a, both, 1e-8);
  ASSERT_EQ(rest.cols(), 1);
  EXPECT_NEAR(std::abs(rest(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(subspace_distance(a, a), 0.0, 1e-15);
  EXPECT_EQ(null_space(MatrixXd::Zero(0, 3), 1e-9).cols(), 3);
}

}  // namespace
}  // namespace symflex
