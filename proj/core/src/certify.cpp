#include "symflex/certify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "symflex/error.hpp"

namespace symflex {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string to_string(FlexVerdict verdict) {
  switch (verdict) {
    case FlexVerdict::FiniteFlex: return "finite-symmetry-preserving-flex";
    case FlexVerdict::NoFlex: return "no-symmetry-preserving-flex";
    case FlexVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(CertificateRoute route) {
  switch (route) {
    case CertificateRoute::RankComparison: return "Thm4.1";
    case CertificateRoute::RegularFlex: return "Thm4.2";
    case CertificateRoute::SliceRankComparison: return "Thm4.3";
    case CertificateRoute::SliceRegularFlex: return "Thm4.4";
    case CertificateRoute::GenericSample: return "Cor4.1";
    case CertificateRoute::IndependentRows: return "Cor4.2";
  }
  return "?";
}

std::string to_string(RegularityMethod method) {
  switch (method) {
    case RegularityMethod::NotTested: return "not-tested";
    case RegularityMethod::Sampled: return "sampled";
    case RegularityMethod::Spanning: return "spanning";
    case RegularityMethod::GenericSample: return "generic-sample";
    case RegularityMethod::IndependentRows: return "independent-rows";
  }
  return "?";
}

namespace {

constexpr int kSampleAttempts = 200;
constexpr double kInjectiveRelative = 1e-6;

bool injective(const Configuration& c) {
  const double cutoff = kInjectiveRelative * c.scale();
  for (int i = 0; i < c.point_count(); ++i)
    for (int j = i + 1; j < c.point_count(); ++j)
      if ((c.point(i) - c.point(j)).norm() <= cutoff) return false;
  return true;
}

}  // namespace

Configuration sample_symmetric_generic(const SymmetryContext& ctx, std::uint64_t seed) {
  const MatrixXd& basis = ctx.fixed_basis();
  if (basis.cols() == 0) throw InvalidArgument("the fixed subspace U is zero-dimensional; no symmetric configuration exists");
  const int d = ctx.dim();
  const int n = ctx.graph().vertex_count();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::optional<Configuration> fallback;
  for (int attempt = 0; attempt < kSampleAttempts; ++attempt) {
    VectorXd c(basis.cols());
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = coeff(rng);
    Configuration config(d, basis * c);
    if (n > 1 && !injective(config)) continue;
    if (config.affine_span_dimension() == std::min(d, n - 1)) return config;
    if (!fallback) fallback = std::move(config);
  }
  if (fallback) return *fallback;
  throw InvalidArgument("could not sample an injective symmetric configuration; phi forces coincident joints");
}

Configuration sample_symmetric_generic(const Graph& graph, const TypeMap& phi, std::uint64_t seed) {
  return sample_symmetric_generic(SymmetryContext(graph, phi), seed);
}

RegularityEvidence regularity_test(const Graph& graph, const Configuration& config, const MatrixXd& basis, int trials,
                                   double radius, std::uint64_t seed, double rank_relative) {
  if (trials < 0) throw InvalidArgument("trials must be non-negative");
  if (!(radius > 0.0)) throw InvalidArgument("sampling radius must be positive");
  RegularityEvidence ev;
  ev.method = RegularityMethod::Sampled;
  ev.trials = trials;
  ev.radius = radius;
  ev.rank_at_p = rank_on_subspace(graph, config, basis, rank_relative).rank;
  ev.max_sampled_rank = ev.rank_at_p;
  const Eigen::Index k = basis.cols();
  if (k > 0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < trials; ++trial) {
      VectorXd c(k);
      for (Eigen::Index i = 0; i < k; ++i) c(i) = gauss(rng);
      const double norm = c.norm();
      if (norm == 0.0) continue;
      c *= radius * std::pow(unit(rng), 1.0 / static_cast<double>(k)) / norm;
      const Configuration q(config.dim(), config.flat() + basis * c);
      const int r = rank_on_subspace(graph, q, basis, rank_relative).rank;
      ev.max_sampled_rank = std::max(ev.max_sampled_rank, r);
      if (r > ev.rank_at_p) ++ev.rank_increases;
    }
  }
  ev.passed = ev.rank_increases == 0;
  return ev;
}

RegularityEvidence regular_in_fixed_space_test(const Framework& fw, const TypeMap& phi, int trials, double radius,
                                               std::uint64_t seed, GraphChoice choice, const Tolerances& tol) {
  const SymmetryContext ctx(fw.graph(), phi);
  const Graph& graph = choice == GraphChoice::G ? ctx.graph() : ctx.complete_graph();
  return regularity_test(graph, fw.config(), ctx.fixed_basis(), trials, radius, seed, tol.rank_relative);
}

namespace {

RegularityEvidence shortcut(RegularityMethod method, int rank) {
  RegularityEvidence ev;
  ev.passed = true;
  ev.method = method;
  ev.rank_at_p = rank;
  ev.max_sampled_rank = rank;
  return ev;
}

// Distinct seeds for the G and K_n sampling runs.
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  std::uint64_t out = 0;
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  out = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  return out;
}

}  // namespace

FlexCertificate finite_flex_decision(const SymmetryContext& ctx, const Configuration& config,
                                     const CertifyPolicy& policy) {
  const Tolerances& tol = policy.tol;
  FlexCertificate cert;
  cert.irrep = 0;
  cert.irrep_name = ctx.irreps()[0].name;
  cert.rank_relative = tol.rank_relative;
  cert.seed = policy.seed;
  cert.subspace_dim = static_cast<int>(ctx.fixed_basis().cols());
  cert.spanning = config.affine_span_dimension(tol.rank_relative) == config.dim();
  cert.rank_g = restricted_rank(ctx, config, GraphChoice::G, tol).rank;
  cert.rank_complete = restricted_rank(ctx, config, GraphChoice::Complete, tol).rank;
  cert.flex_count = static_cast<int>(fully_symmetric_flexes(ctx, config, tol).cols());
  cert.self_stress_count = static_cast<int>(fully_symmetric_self_stresses(ctx, config, tol).cols());

  const double radius = policy.radius_relative * config.scale();
  const MatrixXd& basis = ctx.fixed_basis();

  if (cert.spanning)
    cert.complete_regularity = shortcut(RegularityMethod::Spanning, cert.rank_complete);
  else
    cert.complete_regularity = regularity_test(ctx.complete_graph(), config, basis, policy.trials, radius,
                                               derived_seed(policy.seed, 2), tol.rank_relative);

  if (policy.generic_sample)
    cert.g_regularity = shortcut(RegularityMethod::GenericSample, cert.rank_g);
  else if (cert.self_stress_count == 0)
    cert.g_regularity = shortcut(RegularityMethod::IndependentRows, cert.rank_g);
  else
    cert.g_regularity =
        regularity_test(ctx.graph(), config, basis, policy.trials, radius, derived_seed(policy.seed, 1), tol.rank_relative);

  const bool regular = cert.g_regularity.passed && cert.complete_regularity.passed;
  if (cert.rank_g < cert.rank_complete && regular) {
    cert.verdict = FlexVerdict::FiniteFlex;
    const bool flex_and_span = cert.flex_count > 0 && cert.spanning;
    if (flex_and_span && policy.generic_sample)
      cert.route = CertificateRoute::GenericSample;
    else if (flex_and_span && cert.self_stress_count == 0)
      cert.route = CertificateRoute::IndependentRows;
    else if (flex_and_span)
      cert.route = CertificateRoute::RegularFlex;
    else
      cert.route = CertificateRoute::RankComparison;
    cert.explanation = "restricted rank of G is below that of K_n at a regular point; a symmetry-preserving flex exists";
  } else if (cert.rank_g == cert.rank_complete && regular) {
    cert.verdict = FlexVerdict::NoFlex;
    cert.route = CertificateRoute::RankComparison;
    cert.explanation = "restricted ranks of G and K_n agree at a regular point; no symmetry-preserving flex exists";
  } else {
    cert.verdict = FlexVerdict::Inconclusive;
    if (!cert.g_regularity.passed)
      cert.explanation = "p is not a regular point of G in U (" + std::to_string(cert.g_regularity.rank_increases) + " of " +
                         std::to_string(cert.g_regularity.trials) + " samples raised the rank)";
    else
      cert.explanation = "p is not a regular point of K_n in U";
  }
  return cert;
}

FlexCertificate finite_flex_decision(const Framework& fw, const TypeMap& phi, const CertifyPolicy& policy) {
  return finite_flex_decision(SymmetryContext(fw.graph(), phi), fw.config(), policy);
}

FlexCertificate subrep_flex_decision(const SymmetryContext& ctx, const Configuration& config, int t,
                                     const CertifyPolicy& policy) {
  if (t < 0 || t >= ctx.irreps().size())
    throw InvalidArgument("irrep index " + std::to_string(t + 1) + " out of range 1.." + std::to_string(ctx.irreps().size()));
  if (t == 0) return finite_flex_decision(ctx, config, policy);

  const Tolerances& tol = policy.tol;
  const MatrixXd& basis = ctx.external_basis().components[static_cast<std::size_t>(t)];
  FlexCertificate cert;
  cert.irrep = t;
  cert.irrep_name = ctx.irreps()[t].name;
  cert.rank_relative = tol.rank_relative;
  cert.seed = policy.seed;
  cert.subspace_dim = static_cast<int>(basis.cols());
  cert.spanning = config.affine_span_dimension(tol.rank_relative) == config.dim();
  cert.rank_g = rank_on_subspace(ctx.graph(), config, basis, tol.rank_relative).rank;
  cert.rank_complete = rank_on_subspace(ctx.complete_graph(), config, basis, tol.rank_relative).rank;
  const int rigid = static_cast<int>(symmetric_rigid_motions(ctx, config, t, tol).basis.cols());
  cert.flex_count = std::max(0, cert.subspace_dim - cert.rank_g - rigid);

  const double radius = policy.radius_relative * config.scale();
  cert.g_regularity =
      regularity_test(ctx.graph(), config, basis, policy.trials, radius, derived_seed(policy.seed, 1), tol.rank_relative);
  cert.complete_regularity = regularity_test(ctx.complete_graph(), config, basis, policy.trials, radius,
                                             derived_seed(policy.seed, 2), tol.rank_relative);

  const bool regular = cert.g_regularity.passed && cert.complete_regularity.passed;
  if (cert.rank_g < cert.rank_complete && regular) {
    cert.verdict = FlexVerdict::FiniteFlex;
    cert.route = cert.flex_count > 0 && cert.spanning ? CertificateRoute::SliceRegularFlex
                                                      : CertificateRoute::SliceRankComparison;
    cert.explanation = "flex inside p + V_e(" + cert.irrep_name + ") preserving the kernel subgroup of " + cert.irrep_name;
  } else if (cert.rank_g == cert.rank_complete && regular) {
    cert.verdict = FlexVerdict::NoFlex;
    cert.route = CertificateRoute::SliceRankComparison;
    cert.explanation = "ranks of G and K_n agree on the slice p + V_e(" + cert.irrep_name + ")";
  } else {
    cert.verdict = FlexVerdict::Inconclusive;
    cert.explanation = !cert.g_regularity.passed
                           ? "p is not a regular point of G in the slice p + V_e(" + cert.irrep_name + ")"
                           : "p is not a regular point of K_n in the slice p + V_e(" + cert.irrep_name + ")";
  }
  return cert;
}

FlexCertificate subrep_flex_decision(const Framework& fw, const TypeMap& phi, int t, const CertifyPolicy& policy) {
  return subrep_flex_decision(SymmetryContext(fw.graph(), phi), fw.config(), t, policy);
}

}  // namespace symflex
