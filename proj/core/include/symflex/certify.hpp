#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "symflex/block_rigidity.hpp"

namespace symflex {

enum class FlexVerdict { FiniteFlex, NoFlex, Inconclusive };

/// Which decision rule produced a certificate. to_string gives the short
/// token written to reports ("Thm4.1", ..., "Cor4.2").
enum class CertificateRoute {
  RankComparison,       ///< "Thm4.1": restricted ranks of G and K_n at a regular point
  RegularFlex,          ///< "Thm4.2": regular point with a fully symmetric infinitesimal flex
  SliceRankComparison,  ///< "Thm4.3": rank comparison on p + V_e^(t)
  SliceRegularFlex,     ///< "Thm4.4": regular point of the slice with an infinitesimal flex in it
  GenericSample,        ///< "Cor4.1": generic sample with a fully symmetric infinitesimal flex
  IndependentRows,      ///< "Cor4.2": no fully symmetric self-stress and a fully symmetric flex
};

std::string to_string(FlexVerdict verdict);
std::string to_string(CertificateRoute route);

enum class RegularityMethod { NotTested, Sampled, Spanning, GenericSample, IndependentRows };
std::string to_string(RegularityMethod method);

struct RegularityEvidence {
  bool passed = false;
  RegularityMethod method = RegularityMethod::NotTested;
  int trials = 0;
  double radius = 0.0;          ///< absolute sampling radius
  int rank_at_p = 0;
  int max_sampled_rank = 0;
  int rank_increases = 0;       ///< samples whose rank exceeded rank_at_p
};

struct CertifyPolicy {
  int trials = 32;
  double radius_relative = 1e-3;  ///< radius = radius_relative * configuration scale
  std::uint64_t seed = 1;
  /// Set when the configuration came from sample_symmetric_generic.
  bool generic_sample = false;
  Tolerances tol;
};

struct FlexCertificate {
  FlexVerdict verdict = FlexVerdict::Inconclusive;
  std::optional<CertificateRoute> route;
  int irrep = 0;                  ///< 0-based irrep index of the slice (0 = fully symmetric)
  std::string irrep_name;
  int subspace_dim = 0;           ///< dim U or dim V_e^(t)
  int rank_g = 0;
  int rank_complete = 0;
  int flex_count = 0;             ///< infinitesimal flexes in the subspace modulo rigid motions
  int self_stress_count = 0;      ///< fully symmetric self-stresses (trivial irrep only)
  bool spanning = false;
  RegularityEvidence g_regularity;
  RegularityEvidence complete_regularity;
  double rank_relative = 0.0;
  std::uint64_t seed = 0;
  std::string explanation;
};

/// Seeded random configuration in U: coefficients uniform in [-1, 1] on the
/// basis of U, resampled until the joints are distinct and, when possible,
/// affinely spanning. Throws InvalidArgument when dim U = 0 or no injective
/// sample is found.
Configuration sample_symmetric_generic(const Graph& graph, const TypeMap& phi, std::uint64_t seed);
Configuration sample_symmetric_generic(const SymmetryContext& ctx, std::uint64_t seed);

/// Samples q = p + B c with ||c|| <= radius and compares rank(R(graph, q) B)
/// with rank(R(graph, p) B). B must have orthonormal columns.
RegularityEvidence regularity_test(const Graph& graph, const Configuration& config, const Eigen::MatrixXd& basis,
                                   int trials, double radius, std::uint64_t seed, double rank_relative);

/// Regularity of p as a point of `choice` in U.
RegularityEvidence regular_in_fixed_space_test(const Framework& fw, const TypeMap& phi, int trials, double radius,
                                               std::uint64_t seed = 1, GraphChoice choice = GraphChoice::G,
                                               const Tolerances& tol = {});

FlexCertificate finite_flex_decision(const SymmetryContext& ctx, const Configuration& config,
                                     const CertifyPolicy& policy = {});
FlexCertificate finite_flex_decision(const Framework& fw, const TypeMap& phi, const CertifyPolicy& policy = {});

/// Decision on the affine slice p + V_e^(t). t = 0 delegates to finite_flex_decision.
/// Throws InvalidArgument when t is out of range.
FlexCertificate subrep_flex_decision(const SymmetryContext& ctx, const Configuration& config, int t,
                                     const CertifyPolicy& policy = {});
FlexCertificate subrep_flex_decision(const Framework& fw, const TypeMap& phi, int t, const CertifyPolicy& policy = {});

}  // namespace symflex
