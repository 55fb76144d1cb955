#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/random_instances.hpp"
#include "symflex/error.hpp"
#include "symflex/examples.hpp"
#include "symflex/irreps.hpp"

namespace symflex {
namespace {

using Eigen::MatrixXd;

Eigen::VectorXd v3(double a, double b, double c) { return (Eigen::VectorXd(3) << a, b, c).finished(); }

std::vector<double> values(const IrrepCharacter& c) { return c.values; }

TEST(Characters, MirrorGroup) {
  const auto t = irreducible_characters(make_group(GroupKind::Cs, 3, 1, {std::nullopt, v3(0, 0, 1)}));
  ASSERT_EQ(t.size(), 2);
  EXPECT_EQ(t[0].name, "A'");
  EXPECT_EQ(t[1].name, "A''");
  EXPECT_EQ(values(t[0]), (std::vector<double>{1, 1}));
  EXPECT_EQ(values(t[1]), (std::vector<double>{1, -1}));
  EXPECT_EQ(t.find("A''"), 1);
  EXPECT_EQ(t.find("E"), -1);
}

TEST(Characters, HalfTurn) {
  const auto t = irreducible_characters(make_group(GroupKind::Cm, 3, 2, {v3(0, 0, 1), std::nullopt}));
  ASSERT_EQ(t.size(), 2);
  EXPECT_EQ(t[0].name, "A");
  EXPECT_EQ(t[1].name, "B");
  EXPECT_EQ(values(t[1]), (std::vector<double>{1, -1}));
}

TEST(Characters, ThreeFoldRotation) {
  const auto t = irreducible_characters(make_group(GroupKind::Cm, 2, 3, {}));
  ASSERT_EQ(t.size(), 2);
  EXPECT_EQ(t[1].name, "E");
  EXPECT_EQ(t[1].degree, 2);
  EXPECT_EQ(t[1].real_factor, 2);
  ASSERT_EQ(t[1].values.size(), 3u);
  EXPECT_NEAR(t[1].values[0], 2.0, 1e-15);
  EXPECT_NEAR(t[1].values[1], -1.0, 1e-14);
  EXPECT_NEAR(t[1].values[2], -1.0, 1e-14);
}

TEST(Characters, C2vNamesAndTrivialGroup) {
  const auto t = irreducible_characters(make_group(GroupKind::Cmv, 3, 2, {v3(0, 0, 1), v3(1, 0, 0)}));
  std::vector<std::string> names;
  for (const auto& c : t.characters) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{"A1", "A2", "B1", "B2"}));
  const auto trivial = irreducible_characters(make_group(GroupKind::Trivial, 2, 1, {}));
  ASSERT_EQ(trivial.size(), 1);
  EXPECT_EQ(trivial[0].name, "A");
}

TEST(Characters, Orthogonality) {
  const std::vector<SymmetryGroup> groups{
      make_group(GroupKind::Cm, 2, 5, {}), make_group(GroupKind::Cm, 3, 6, {v3(0, 0, 1), std::nullopt}),
      make_group(GroupKind::Cmv, 2, 4, {std::nullopt, (Eigen::VectorXd(2) << 0, 1).finished()}),
      make_group(GroupKind::Cmv, 3, 5, {v3(0, 0, 1), v3(1, 0, 0)})};
  for (const auto& g : groups) {
    SCOPED_TRACE(g.schoenflies());
    const auto t = irreducible_characters(g);
    int real_dim = 0;
    for (int a = 0; a < t.size(); ++a) {
      real_dim += t[a].degree * t[a].degree / t[a].real_factor;
      for (int b = 0; b < t.size(); ++b) {
        double sum = 0.0;
        for (int x = 0; x < g.size(); ++x)
          sum += t[a].values[static_cast<std::size_t>(x)] * t[b].values[static_cast<std::size_t>(x)];
        EXPECT_NEAR(sum, a == b ? g.size() * t[a].real_factor : 0.0, 1e-10);
      }
    }
    // Sum of squared complex degrees equals |S|.
    EXPECT_EQ(real_dim, g.size());
  }
}

TEST(Projectors, ExampleTriangle) {
  const auto doc = builtin_example("triangle-cs");
  const auto he = external_representation(doc.type_map(), doc.graph(), 2);
  const auto hi = internal_representation(doc.type_map(), doc.graph());
  const auto table = irreducible_characters(doc.symmetry_group());
  const MatrixXd p1 = isotypic_projector(he, table, 0);
  EXPECT_EQ(testing::rank_of(p1), 3);
  EXPECT_EQ(testing::rank_of(isotypic_projector(he, table, 1)), 3);
  EXPECT_EQ(testing::rank_of(isotypic_projector(hi, table, 0)), 2);
  EXPECT_EQ(testing::rank_of(isotypic_projector(hi, table, 1)), 1);
  EXPECT_THROW(isotypic_projector(he, table, 2), InvalidArgument);
}

TEST(Projectors, LawsOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto inst = testing::random_instance(seed);
    SCOPED_TRACE(inst.description);
    const auto table = irreducible_characters(inst.group);
    for (const auto& rep : {external_representation(inst.phi, inst.graph, inst.config.dim()),
                            internal_representation(inst.phi, inst.graph)}) {
      MatrixXd sum = MatrixXd::Zero(rep.degree, rep.degree);
      std::vector<MatrixXd> ps;
      for (int t = 0; t < table.size(); ++t) ps.push_back(isotypic_projector(rep, table, t));
      for (int a = 0; a < table.size(); ++a) {
        const auto& p = ps[static_cast<std::size_t>(a)];
        sum += p;
        EXPECT_LE((p * p - p).norm(), 1e-10);
        EXPECT_LE((p - p.transpose()).norm(), 1e-10);
        for (int b = a + 1; b < table.size(); ++b) EXPECT_LE((p * ps[static_cast<std::size_t>(b)]).norm(), 1e-10);
        for (const auto& h : rep.matrices) EXPECT_LE((h * p - p * h).norm(), 1e-10);
      }
      EXPECT_LE((sum - MatrixXd::Identity(rep.degree, rep.degree)).norm(), 1e-10);
    }
  }
}

TEST(Bases, OrthonormalAndComplete) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto inst = testing::random_instance(seed);
    SCOPED_TRACE(inst.description);
    const auto table = irreducible_characters(inst.group);
    const auto rep = external_representation(inst.phi, inst.graph, inst.config.dim());
    const auto basis = symmetry_adapted_basis(rep, table);
    const MatrixXd q = basis.stacked();
    ASSERT_EQ(q.cols(), rep.degree);
    EXPECT_LE((q.transpose() * q - MatrixXd::Identity(rep.degree, rep.degree)).norm(), 1e-10);
    for (int t = 0; t < table.size(); ++t) {
      EXPECT_EQ(basis.dimension(t) % table[t].degree, 0);
      EXPECT_EQ(basis.multiplicities[static_cast<std::size_t>(t)] * table[t].degree, basis.dimension(t));
    }
    EXPECT_EQ(basis.dimension(0), testing::fixed_dim_by_orbits(inst.phi));
  }
}

TEST(FixedSpace, Dimensions) {
  EXPECT_EQ(builtin_example("triangle-cs").type_map().permutations().size(), 2u);
  EXPECT_EQ(fixed_subspace_basis(builtin_example("triangle-cs").type_map(), 2).cols(), 3);
  EXPECT_EQ(fixed_subspace_basis(builtin_example("bricard-c2").type_map(), 3).cols(), 9);
  EXPECT_EQ(fixed_subspace_basis(builtin_example("bricard-cs").type_map(), 3).cols(), 10);
  const auto trivial = make_group(GroupKind::Trivial, 3, 1, {});
  const auto phi = TypeMap::from_generators(trivial, 5, {});
  EXPECT_EQ(fixed_subspace_basis(phi, 3).cols(), 15);
}

TEST(FixedSpace, BricardExternalTrivialComponent) {
  const auto doc = builtin_example("bricard-c2");
  const auto rep = external_representation(doc.type_map(), doc.graph(), 3);
  const auto basis = symmetry_adapted_basis(rep, irreducible_characters(doc.symmetry_group()));
  EXPECT_EQ(basis.dimension(0), 9);
  EXPECT_EQ(basis.dimension(1), 9);
}

}  // namespace
}  // namespace symflex
