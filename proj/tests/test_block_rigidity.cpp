#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/random_instances.hpp"
#include "symflex/block_rigidity.hpp"
#include "symflex/error.hpp"
#include "symflex/examples.hpp"

namespace symflex {
namespace {

using Eigen::MatrixXd;

struct Loaded {
  FrameworkDocument doc;
  SymmetryContext ctx;
  Configuration config;
};

Loaded load(const std::string& name, std::uint64_t seed = 7) {
  auto doc = builtin_example(name, {.seed = seed});
  SymmetryContext ctx(doc.graph(), doc.type_map());
  auto config = doc.configuration();
  return {std::move(doc), std::move(ctx), std::move(config)};
}

std::vector<int> row(const MaxwellRow& r) { return {r.dim_vi, r.dim_ve, r.dim_we, r.slack}; }

TEST(Blocks, ExampleTriangleShapes) {
  const auto l = load("triangle-cs");
  const auto bd = block_diagonalize(l.ctx, l.config);
  ASSERT_EQ(bd.blocks.size(), 2u);
  EXPECT_EQ(bd.blocks[0].block.rows(), 2);
  EXPECT_EQ(bd.blocks[0].block.cols(), 3);
  EXPECT_EQ(bd.blocks[1].block.rows(), 1);
  EXPECT_EQ(bd.blocks[1].block.cols(), 3);
  EXPECT_LE(bd.off_block_residual, 1e-12);
  EXPECT_EQ(bd.blocks[0].rank.rank + bd.blocks[1].rank.rank, bd.full_rank.rank);
}

TEST(Blocks, OrthogonalChangeOfBasisReproducesR) {
  for (const std::string name : {"k33-phi-a", "bricard-c2", "octahedron-c2v", "octahedron-cs-isostatic"}) {
    SCOPED_TRACE(name);
    const auto l = load(name);
    const auto bd = block_diagonalize(l.ctx, l.config);
    const MatrixXd r = rigidity_matrix(l.doc.graph(), l.config);
    MatrixXd assembled = MatrixXd::Zero(r.rows(), r.cols());
    Eigen::Index ro = 0, co = 0;
    for (const auto& b : bd.blocks) {
      assembled.block(ro, co, b.block.rows(), b.block.cols()) = b.block;
      ro += b.block.rows();
      co += b.block.cols();
    }
    EXPECT_LE((bd.t_i * assembled * bd.t_e.transpose() - r).norm(), 1e-10 * bd.norm);
  }
}

TEST(Blocks, AsymmetricConfigurationRejected) {
  const auto l = load("triangle-cs");
  Eigen::VectorXd flat = l.config.flat();
  flat(4) += 0.1;
  EXPECT_THROW(block_diagonalize(l.ctx, Configuration(2, flat)), ValidationError);
}

TEST(Blocks, CompleteGraphChoice) {
  const auto l = load("bricard-c2");
  const auto bd = block_diagonalize(l.ctx, l.config, GraphChoice::Complete);
  int rows = 0;
  for (const auto& b : bd.blocks) rows += static_cast<int>(b.block.rows());
  EXPECT_EQ(rows, 15);
  EXPECT_EQ(bd.full_rank.rank, 12);
}

TEST(Maxwell, GoldenCounts) {
  {
    const auto m = maxwell_counts(load("k33-phi-a").ctx, load("k33-phi-a").config);
    EXPECT_EQ(row(m.rows[0]), (std::vector<int>{5, 6, 1, 0}));
  }
  {
    const auto l = load("k33-phi-b");
    const auto m = maxwell_counts(l.ctx, l.config);
    EXPECT_EQ(m.rows[0].slack, -1);
    EXPECT_EQ(m.rows[1].slack, 1);
  }
  {
    const auto l = load("bricard-c2");
    EXPECT_EQ(row(maxwell_counts(l.ctx, l.config).rows[0]), (std::vector<int>{6, 9, 2, 1}));
  }
  {
    const auto l = load("octahedron-cs-isostatic");
    const auto m = maxwell_counts(l.ctx, l.config);
    EXPECT_EQ(row(m.rows[0]), (std::vector<int>{8, 11, 3, 0}));
    EXPECT_EQ(row(m.rows[1]), (std::vector<int>{4, 7, 3, 0}));
    EXPECT_TRUE(m.spanning);
  }
}

TEST(RigidMotions, SymmetricDimensions) {
  const std::vector<std::pair<std::string, int>> cases{{"bricard-c2", 2}, {"bricard-cs", 3}, {"octahedron-c2v", 1}};
  for (const auto& [name, expected] : cases) {
    SCOPED_TRACE(name);
    const auto l = load(name);
    const auto w = symmetric_rigid_motions(l.ctx, l.config, 0);
    EXPECT_TRUE(w.spanning);
    EXPECT_EQ(w.basis.cols(), expected);
    EXPECT_EQ(w.basis.cols(), testing::symmetric_rigid_motion_count(l.doc.symmetry_group()));
    // Inside U and inside ker R.
    const MatrixXd& u = l.ctx.fixed_basis();
    EXPECT_LE((w.basis - u * (u.transpose() * w.basis)).norm(), 1e-10);
    EXPECT_LE((rigidity_matrix(l.doc.graph(), l.config) * w.basis).norm(), 1e-10);
  }
}

TEST(Flexes, FullySymmetricFlexAndStressCounts) {
  struct Case {
    std::string name;
    int flexes;
    int stresses;
  };
  for (const auto& c : std::vector<Case>{{"triangle-cs", 0, 0},
                                         {"k33-phi-a", 0, 0},
                                         {"k33-phi-b", 0, 1},
                                         {"k33-hexagon", 1, 1},
                                         {"bricard-c2", 1, 0},
                                         {"octahedron-cs-isostatic", 0, 0}}) {
    SCOPED_TRACE(c.name);
    const auto l = load(c.name);
    const MatrixXd f = fully_symmetric_flexes(l.ctx, l.config);
    const MatrixXd s = fully_symmetric_self_stresses(l.ctx, l.config);
    EXPECT_EQ(f.cols(), c.flexes);
    EXPECT_EQ(s.cols(), c.stresses);
    const MatrixXd r = rigidity_matrix(l.doc.graph(), l.config);
    EXPECT_LE((r * f).norm(), 1e-9 * std::max(1.0, r.norm()));
    EXPECT_LE((s.transpose() * r).norm(), 1e-9 * std::max(1.0, r.norm()));
    for (const auto& h : l.ctx.external().matrices) EXPECT_LE((h * f - f).norm(), 1e-10);
    for (const auto& h : l.ctx.internal().matrices) EXPECT_LE((h * s - s).norm(), 1e-10);
  }
}

TEST(Flexes, FiniteDifferenceOfEdgeFunctionVanishes) {
  const auto l = load("bricard-c2");
  const MatrixXd f = fully_symmetric_flexes(l.ctx, l.config);
  ASSERT_EQ(f.cols(), 1);
  EXPECT_LE(testing::edge_function_derivative(l.doc.graph(), l.config, f.col(0)).norm(), 1e-7);
}

TEST(RestrictedRank, GoldenValues) {
  {
    const auto l = load("k33-phi-a");
    EXPECT_EQ(l.ctx.fixed_basis().cols(), 6);
    EXPECT_EQ(restricted_rank(l.ctx, l.config, GraphChoice::G).rank, 5);
    EXPECT_EQ(restricted_rank(l.ctx, l.config, GraphChoice::Complete).rank, 5);
  }
  {
    const auto l = load("bricard-c2");
    EXPECT_EQ(restricted_rank(l.ctx, l.config, GraphChoice::G).rank, 6);
    EXPECT_EQ(restricted_rank(l.ctx, l.config, GraphChoice::Complete).rank, 7);
  }
}

TEST(RestrictedRank, AgreesWithTrivialBlockOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto inst = testing::random_instance(seed);
    SCOPED_TRACE(inst.description);
    const SymmetryContext ctx(inst.graph, inst.phi);
    const auto bd = block_diagonalize(ctx, inst.config);
    EXPECT_EQ(restricted_rank(ctx, inst.config, GraphChoice::G).rank, bd.blocks[0].rank.rank);
    int total = 0;
    for (const auto& b : bd.blocks) total += b.rank.rank;
    EXPECT_EQ(total, bd.full_rank.rank);
    EXPECT_EQ(static_cast<int>(bd.blocks[0].block.rows()), testing::edge_orbit_count(inst.graph, inst.phi));
    EXPECT_EQ(static_cast<int>(bd.blocks[0].block.cols()), testing::fixed_dim_by_orbits(inst.phi));
  }
}

TEST(Context, RejectsNonAutomorphism) {
  const auto doc = builtin_example("triangle-cs");
  const Graph g(3, {{0, 1}, {0, 2}});
  EXPECT_THROW(SymmetryContext(g, doc.type_map()), ValidationError);
}

}  // namespace
}  // namespace symflex
