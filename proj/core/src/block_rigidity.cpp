#include "symflex/block_rigidity.hpp"

#include <cmath>

#include "symflex/error.hpp"

namespace symflex {

using Eigen::MatrixXd;

SymmetryContext::SymmetryContext(const Graph& graph, const TypeMap& phi)
    : graph_(graph), complete_(Graph::complete(graph.vertex_count())), phi_(phi) {
  const auto issues = check_type_map(graph, phi);
  if (!issues.empty()) throw ValidationError(issues.front().message);
  irreps_ = irreducible_characters(phi.group());
  external_ = external_representation(phi, graph, dim());
  internal_ = internal_representation(phi, graph);
  internal_complete_ = internal_representation(phi, complete_);
  external_basis_ = symmetry_adapted_basis(external_, irreps_);
  internal_basis_ = symmetry_adapted_basis(internal_, irreps_);
  internal_complete_basis_ = symmetry_adapted_basis(internal_complete_, irreps_);
  fixed_ = fixed_subspace_basis(phi, dim());
}

namespace {

const Graph& pick(const SymmetryContext& ctx, GraphChoice choice) {
  return choice == GraphChoice::G ? ctx.graph() : ctx.complete_graph();
}

const IsotypicBasis& pick_internal(const SymmetryContext& ctx, GraphChoice choice) {
  return choice == GraphChoice::G ? ctx.internal_basis() : ctx.internal_complete_basis();
}

void require_shape(const SymmetryContext& ctx, const Configuration& config) {
  if (config.dim() != ctx.dim() || config.point_count() != ctx.graph().vertex_count())
    throw InvalidArgument("configuration does not match the symmetry context (dimension or vertex count)");
}

struct Svd {
  MatrixXd u;
  MatrixXd v;
};

Svd full_svd(const MatrixXd& a) {
  if (a.rows() == 0 || a.cols() == 0)
    return {MatrixXd::Identity(a.rows(), a.rows()), MatrixXd::Identity(a.cols(), a.cols())};
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.matrixV()};
}

// Top `count` directions of span(a) orthogonal to span(b).
MatrixXd complement_with_count(const MatrixXd& a, const MatrixXd& b, int count) {
  if (count <= 0) return MatrixXd(a.rows(), 0);
  const MatrixXd residual = b.cols() == 0 ? a : MatrixXd(a - b * (b.transpose() * a));
  Eigen::JacobiSVD<MatrixXd> svd(residual, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(count);
}

// Orthonormal basis of span(a) with an absolute cutoff; columns of a have norm <= 1.
MatrixXd range_absolute(const MatrixXd& a, double cutoff) {
  if (a.rows() == 0 || a.cols() == 0) return MatrixXd(a.rows(), 0);
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

double rank_cutoff(const Graph& graph, const Configuration& config, double relative) {
  return relative * spectral_norm(rigidity_matrix(graph, config));
}

BlockDecomposition block_diagonalize(const SymmetryContext& ctx, const Configuration& config, GraphChoice choice,
                                     const Tolerances& tol) {
  require_shape(ctx, config);
  const Graph& graph = pick(ctx, choice);
  const auto& ib = pick_internal(ctx, choice);
  const auto& eb = ctx.external_basis();
  const MatrixXd r = rigidity_matrix(graph, config);

  BlockDecomposition out;
  out.norm = spectral_norm(r);
  const double cutoff = tol.rank_relative * out.norm;
  out.t_e = eb.stacked();
  out.t_i = ib.stacked();
  out.full_rank = rank_with_tolerance(r, cutoff);

  double off = 0.0;
  const int count = ctx.irreps().size();
  for (int s = 0; s < count; ++s) {
    const MatrixXd left = ib.components[static_cast<std::size_t>(s)].transpose() * r;
    for (int t = 0; t < count; ++t) {
      const MatrixXd piece = left * eb.components[static_cast<std::size_t>(t)];
      if (s == t) {
        IrrepBlock block;
        block.name = ctx.irreps()[t].name;
        block.degree = ctx.irreps()[t].degree;
        block.block = piece;
        block.rank = rank_with_tolerance(piece, cutoff);
        out.blocks.push_back(std::move(block));
      } else {
        off += piece.squaredNorm();
      }
    }
  }
  off = std::sqrt(off);
  out.off_block_residual = out.norm > 0.0 ? off / out.norm : off;
  if (out.off_block_residual > tol.off_block_relative)
    throw ValidationError("rigidity matrix is not block-diagonal in the symmetry-adapted basis (off-block residual " +
                          std::to_string(out.off_block_residual) + "); phi or the configuration breaks the symmetry");
  return out;
}

BlockDecomposition block_diagonalize(const Framework& fw, const TypeMap& phi, const Tolerances& tol) {
  return block_diagonalize(SymmetryContext(fw.graph(), phi), fw.config(), GraphChoice::G, tol);
}

SymmetricRigidMotions symmetric_rigid_motions(const SymmetryContext& ctx, const Configuration& config, int t,
                                              const Tolerances& tol) {
  require_shape(ctx, config);
  if (t < 0 || t >= ctx.irreps().size()) throw InvalidArgument("irrep index out of range");
  SymmetricRigidMotions out;
  out.spanning = config.affine_span_dimension(tol.rank_relative) == config.dim();
  const MatrixXd rigid = rigid_motion_space(config, tol.rank_relative);
  const MatrixXd p = isotypic_projector(ctx.external(), ctx.irreps(), t);
  const MatrixXd projected = range_absolute(p * rigid, tol.subspace);
  out.basis = subspace_intersection(projected, rigid, tol.subspace);
  return out;
}

SymmetricRigidMotions symmetric_rigid_motions(const Framework& fw, const TypeMap& phi, int t, const Tolerances& tol) {
  return symmetric_rigid_motions(SymmetryContext(fw.graph(), phi), fw.config(), t, tol);
}

MaxwellCount maxwell_counts(const SymmetryContext& ctx, const Configuration& config, const Tolerances& tol) {
  require_shape(ctx, config);
  MaxwellCount out;
  out.spanning = config.affine_span_dimension(tol.rank_relative) == config.dim();
  for (int t = 0; t < ctx.irreps().size(); ++t) {
    MaxwellRow row;
    row.irrep = ctx.irreps()[t].name;
    row.dim_ve = ctx.external_basis().dimension(t);
    row.dim_vi = ctx.internal_basis().dimension(t);
    row.dim_we = static_cast<int>(symmetric_rigid_motions(ctx, config, t, tol).basis.cols());
    row.slack = row.dim_ve - row.dim_we - row.dim_vi;
    out.rows.push_back(row);
  }
  return out;
}

MaxwellCount maxwell_counts(const Framework& fw, const TypeMap& phi, const Tolerances& tol) {
  return maxwell_counts(SymmetryContext(fw.graph(), phi), fw.config(), tol);
}

MatrixXd fully_symmetric_flexes(const SymmetryContext& ctx, const Configuration& config, const Tolerances& tol) {
  const auto decomposition = block_diagonalize(ctx, config, GraphChoice::G, tol);
  const auto& b1 = decomposition.blocks.front();
  const MatrixXd& be1 = ctx.external_basis().components.front();
  const auto svd = full_svd(b1.block);
  const MatrixXd kernel = be1 * svd.v.rightCols(b1.block.cols() - b1.rank.rank);
  const MatrixXd w = symmetric_rigid_motions(ctx, config, 0, tol).basis;
  return complement_with_count(kernel, w, static_cast<int>(kernel.cols() - w.cols()));
}

MatrixXd fully_symmetric_flexes(const Framework& fw, const TypeMap& phi, const Tolerances& tol) {
  return fully_symmetric_flexes(SymmetryContext(fw.graph(), phi), fw.config(), tol);
}

MatrixXd fully_symmetric_self_stresses(const SymmetryContext& ctx, const Configuration& config, const Tolerances& tol) {
  const auto decomposition = block_diagonalize(ctx, config, GraphChoice::G, tol);
  const auto& b1 = decomposition.blocks.front();
  const MatrixXd& bi1 = ctx.internal_basis().components.front();
  const auto svd = full_svd(b1.block);
  return bi1 * svd.u.rightCols(b1.block.rows() - b1.rank.rank);
}

MatrixXd fully_symmetric_self_stresses(const Framework& fw, const TypeMap& phi, const Tolerances& tol) {
  return fully_symmetric_self_stresses(SymmetryContext(fw.graph(), phi), fw.config(), tol);
}

RankReport rank_on_subspace(const Graph& graph, const Configuration& config, const MatrixXd& basis, double relative) {
  const MatrixXd r = rigidity_matrix(graph, config);
  return rank_with_tolerance(r * basis, relative * spectral_norm(r));
}

RankReport restricted_rank(const SymmetryContext& ctx, const Configuration& config, GraphChoice choice,
                           const Tolerances& tol) {
  require_shape(ctx, config);
  return rank_on_subspace(pick(ctx, choice), config, ctx.fixed_basis(), tol.rank_relative);
}

RankReport restricted_rank(const Framework& fw, const TypeMap& phi, GraphChoice choice, const Tolerances& tol) {
  return restricted_rank(SymmetryContext(fw.graph(), phi), fw.config(), choice, tol);
}

}  // namespace symflex
