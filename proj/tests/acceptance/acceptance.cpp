// Acceptance checks: one PASS/FAIL line per criterion.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "support/properties.hpp"
#include "symflex/certify.hpp"
#include "symflex/examples.hpp"
#include "symflex/trace.hpp"

namespace {

using namespace symflex;
using Eigen::MatrixXd;

constexpr int kSeeds = 10;

struct Outcome {
  bool pass = true;
  std::string failure;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) failure = what;
    pass = pass && ok;
  }
};

struct Loaded {
  FrameworkDocument doc;
  SymmetryContext ctx;
  Configuration p;
};

Loaded load(const std::string& name, std::uint64_t seed) {
  auto doc = builtin_example(name, {.seed = seed});
  SymmetryContext ctx(doc.graph(), doc.type_map());
  auto p = doc.configuration();
  return {std::move(doc), std::move(ctx), std::move(p)};
}

std::string counts(const MaxwellRow& r) {
  return "(" + std::to_string(r.dim_vi) + ", " + std::to_string(r.dim_ve) + ", " + std::to_string(r.dim_we) + ")";
}

bool counts_are(const MaxwellRow& r, int vi, int ve, int we) {
  return r.dim_vi == vi && r.dim_ve == ve && r.dim_we == we;
}

// Maxwell counts of the trivial irrep agree with orbit counting.
bool trivial_counts_match_oracle(const Loaded& l, const MaxwellRow& r) {
  return r.dim_vi == testing::edge_orbit_count(l.doc.graph(), l.doc.type_map()) &&
         r.dim_ve == testing::fixed_dim_by_orbits(l.doc.type_map()) &&
         r.dim_we == testing::symmetric_rigid_motion_count(l.doc.symmetry_group());
}

void golden_matrices(Outcome& o) {
  const auto doc = builtin_example("triangle-cs");
  const auto he = external_representation(doc.type_map(), doc.graph(), 2);
  const auto hi = internal_representation(doc.type_map(), doc.graph());
  MatrixXd he_s(6, 6);
  he_s << 0, 0, -1, 0, 0, 0,  //
      0, 0, 0, 1, 0, 0,       //
      -1, 0, 0, 0, 0, 0,      //
      0, 1, 0, 0, 0, 0,       //
      0, 0, 0, 0, -1, 0,      //
      0, 0, 0, 0, 0, 1;
  MatrixXd hi_s(3, 3);
  hi_s << 1, 0, 0, 0, 0, 1, 0, 1, 0;
  o.require(he.matrices[0] == MatrixXd::Identity(6, 6), "H_e(Id) differs");
  o.require(he.matrices[1] == he_s, "H_e(s) differs");
  o.require(hi.matrices[0] == MatrixXd::Identity(3, 3), "H_i(Id) differs");
  o.require(hi.matrices[1] == hi_s, "H_i(s) differs");
  o.detail << "H_e(Id), H_e(s), H_i(Id), H_i(s) entry-wise";
}

void golden_dimensions(Outcome& o) {
  const auto l = load("triangle-cs", 1);
  const auto& e = l.ctx.external_basis();
  const auto& i = l.ctx.internal_basis();
  o.require(e.dimension(0) == 3 && e.dimension(1) == 3, "external dimensions differ");
  o.require(i.dimension(0) == 2 && i.dimension(1) == 1, "internal dimensions differ");
  o.detail << "external (" << e.dimension(0) << "," << e.dimension(1) << "), internal (" << i.dimension(0) << ","
           << i.dimension(1) << ")";
}

void k33_contrast(Outcome& o) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const auto l = load("k33-phi-a", seed);
    for (double factor : {1.0, 10.0, 0.1}) {
      Tolerances tol = l.doc.tolerances();
      tol.rank_relative *= factor;
      const auto rigid = infinitesimal_rigidity_test(l.doc.framework(), tol.rank_relative);
      o.require(rigid.verdict == RigidityVerdict::InfinitesimallyRigid && rigid.rank.rank == 9,
                "k33-phi-a seed " + std::to_string(seed) + " is not rigid with rank 9");
      o.require(fully_symmetric_flexes(l.ctx, l.p, tol).cols() == 0,
                "k33-phi-a seed " + std::to_string(seed) + " has a fully symmetric flex");
    }
  }
  const auto hex = load("k33-hexagon", 1);
  for (double factor : {1.0, 10.0, 0.1}) {
    auto policy = hex.doc.policy();
    policy.tol.rank_relative *= factor;
    const auto c = finite_flex_decision(hex.ctx, hex.p, policy);
    o.require(fully_symmetric_flexes(hex.ctx, hex.p, policy.tol).cols() >= 1, "k33-hexagon has no fully symmetric flex");
    o.require(fully_symmetric_self_stresses(hex.ctx, hex.p, policy.tol).cols() >= 1,
              "k33-hexagon has no fully symmetric self-stress");
    o.require(!c.g_regularity.passed, "k33-hexagon passed the regularity test");
    o.require(c.verdict == FlexVerdict::Inconclusive, "k33-hexagon verdict is " + to_string(c.verdict));
  }
  o.detail << "k33-phi-a rank 9 and no flex on " << kSeeds
           << " seeds; k33-hexagon flex, self-stress, regularity failed, inconclusive; tolerance x10 and /10";
}

void octahedron(Outcome& o, const std::string& name, int vi, int ve, int we) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const auto l = load(name, seed);
    const auto rows = maxwell_counts(l.ctx, l.p).rows;
    const std::string tag = name + " seed " + std::to_string(seed);
    o.require(counts_are(rows[0], vi, ve, we), tag + " counts " + counts(rows[0]));
    o.require(trivial_counts_match_oracle(l, rows[0]), tag + " counts disagree with the orbit oracle");
    const auto c = finite_flex_decision(l.ctx, l.p, l.doc.policy());
    o.require(c.flex_count == 1, tag + " flex count " + std::to_string(c.flex_count));
    o.require(c.verdict == FlexVerdict::FiniteFlex, tag + " verdict " + to_string(c.verdict));
    if (name == "bricard-c2") {
      o.require(c.self_stress_count == 0, tag + " has a self-stress");
      o.require(c.route == CertificateRoute::GenericSample, tag + " route is not Cor4.1");
    }
  }
  o.detail << "counts (" << vi << ", " << ve << ", " << we << "), one flex, finite flex on " << kSeeds << " seeds";
}

void isostatic(Outcome& o) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const auto l = load("octahedron-cs-isostatic", seed);
    const auto rows = maxwell_counts(l.ctx, l.p).rows;
    const std::string tag = "seed " + std::to_string(seed);
    o.require(counts_are(rows[0], 8, 11, 3) && rows[0].slack == 0, tag + " A' counts " + counts(rows[0]));
    o.require(counts_are(rows[1], 4, 7, 3) && rows[1].slack == 0, tag + " A'' counts " + counts(rows[1]));
    o.require(trivial_counts_match_oracle(l, rows[0]), tag + " counts disagree with the orbit oracle");
    o.require(block_diagonalize(l.ctx, l.p).full_rank.rank == 12, tag + " rank is not 12");
    const auto c = finite_flex_decision(l.ctx, l.p, l.doc.policy());
    o.require(c.verdict == FlexVerdict::NoFlex, tag + " verdict " + to_string(c.verdict));
  }
  o.detail << "slack 0 with (8, 11, 3) and (4, 7, 3), rank 12, no symmetry-preserving flex";
}

TraceOptions bricard_trace_options(const FrameworkDocument& doc) {
  TraceOptions options;
  options.steps = 50;
  options.step_size = 0.02;
  options.policy = doc.policy();
  return options;
}

void tracer_conservation(Outcome& o) {
  const auto l = load("bricard-c2", 7);
  const auto path = trace_flex(l.ctx, l.p, bricard_trace_options(l.doc));
  const auto r = path_validate(path, l.doc.framework(), l.doc.type_map());
  o.require(path.frames.size() == 51, "trace stopped early");
  o.require(r.max_edge_drift <= 1e-8 * l.p.scale(), "edge drift too large");
  o.require(r.max_symmetry_residual <= 1e-10, "symmetry residual too large");
  o.require(r.witness.has_value() && r.witness->change > 1e-3, "no non-congruence witness");
  o.detail << "edge drift " << r.max_edge_drift << ", symmetry residual " << r.max_symmetry_residual;
  if (r.witness)
    o.detail << ", witness (" << r.witness->first + 1 << "," << r.witness->second + 1 << ") change " << r.witness->change;
}

double plane_distance(const Configuration& q) {
  const Eigen::Vector3d a = q.point(1) - q.point(0);
  const Eigen::Vector3d b = q.point(2) - q.point(0);
  const Eigen::Vector3d c = q.point(3) - q.point(0);
  return a.cross(b).normalized().dot(c);
}

void singular_frame(Outcome& o) {
  const auto l = load("bricard-c2", 7);
  auto options = bricard_trace_options(l.doc);
  options.monitor = plane_distance;
  const auto path = trace_flex(l.ctx, l.p, options);
  int event = -1;
  for (std::size_t k = 0; k < path.diagnostics.size(); ++k)
    if (path.diagnostics[k].event && event < 0) event = static_cast<int>(k);
  o.require(event >= 0, "no coplanar frame located");
  if (event < 0) return;
  const auto& q = path.frames[static_cast<std::size_t>(event)];
  const double distance = std::abs(plane_distance(q));
  o.require(distance <= 1e-6, "located frame is not coplanar");
  o.require(path.frames.size() >= 52 && event + 1 < static_cast<int>(path.frames.size()), "trace did not continue");
  o.require(path_validate(path, l.doc.framework(), l.doc.type_map()).constraints_ok, "constraints violated");
  const auto reg = regular_in_fixed_space_test(Framework(l.doc.graph(), q), l.doc.type_map(), 32, 1e-3, 7);
  const int rank_p = restricted_rank(l.ctx, l.p, GraphChoice::G).rank;
  o.require(reg.passed && reg.rank_at_p == rank_p, "coplanar frame is not regular with the generic rank");
  o.detail << "frame " << event << " has joints 1-4 coplanar to " << distance << ", restricted rank " << reg.rank_at_p
           << " equals the generic rank, " << path.frames.size() << " frames";
}

void properties(Outcome& o) {
  constexpr std::uint64_t kInstances = 100;
  for (std::uint64_t seed = 1; seed <= kInstances; ++seed) {
    const auto inst = testing::random_instance(seed);
    for (const auto& [name, result] : std::vector<std::pair<std::string, std::string>>{
             {"representation axioms", testing::check_representation_axioms(inst)},
             {"projector laws", testing::check_projector_laws(inst)},
             {"dimension sum", testing::check_dimension_sum(inst)},
             {"intertwining", testing::check_intertwining(inst)},
             {"rank additivity", testing::check_rank_additivity(inst)},
             {"restricted rank", testing::check_restricted_rank(inst)},
             {"rigid-motion kernel", testing::check_rigid_motion_kernel(inst)},
             {"Jacobian", testing::check_jacobian(inst, seed)}})
      o.require(result.empty(), name + " fails on " + inst.description + ": " + result);
  }
  o.detail << "" << kInstances << " random instances";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"golden representation matrices", golden_matrices},
      {"golden isotypic dimensions", golden_dimensions},
      {"K33 type contrast", k33_contrast},
      {"Bricard C2 octahedron", [](Outcome& o) { octahedron(o, "bricard-c2", 6, 9, 2); }},
      {"Bricard Cs octahedron", [](Outcome& o) { octahedron(o, "bricard-cs", 6, 10, 3); }},
      {"C2v octahedron", [](Outcome& o) { octahedron(o, "octahedron-c2v", 4, 6, 1); }},
      {"isostatic Cs octahedron", isostatic},
      {"tracer conservation", tracer_conservation},
      {"singular frame traversal", singular_frame},
      {"randomized property suites", properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.failure = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu: %s %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.pass ? o.detail.str().c_str() : o.failure.c_str());
  }
  return failures == 0 ? 0 : 1;
}
