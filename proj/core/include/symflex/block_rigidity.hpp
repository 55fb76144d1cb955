#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symflex/framework.hpp"
#include "symflex/irreps.hpp"
#include "symflex/linalg.hpp"
#include "symflex/symmetry.hpp"

namespace symflex {

/// Everything about (G, phi) that does not depend on the configuration:
/// representations, symmetry-adapted bases for G and K_n, and B_U.
/// Build once and reuse across nearby configurations.
class SymmetryContext {
public:
  SymmetryContext() = default;
  /// Throws ValidationError when phi is not a homomorphism into Aut(G).
  SymmetryContext(const Graph& graph, const TypeMap& phi);

  const Graph& graph() const noexcept { return graph_; }
  const Graph& complete_graph() const noexcept { return complete_; }
  const TypeMap& phi() const noexcept { return phi_; }
  const SymmetryGroup& group() const noexcept { return phi_.group(); }
  int dim() const noexcept { return phi_.group().dim(); }
  const IrrepTable& irreps() const noexcept { return irreps_; }

  const Representation& external() const noexcept { return external_; }
  const Representation& internal() const noexcept { return internal_; }
  const Representation& internal_complete() const noexcept { return internal_complete_; }

  const IsotypicBasis& external_basis() const noexcept { return external_basis_; }
  const IsotypicBasis& internal_basis() const noexcept { return internal_basis_; }
  const IsotypicBasis& internal_complete_basis() const noexcept { return internal_complete_basis_; }

  /// Orthonormal basis of U from the kernel intersection.
  const Eigen::MatrixXd& fixed_basis() const noexcept { return fixed_; }

private:
  Graph graph_;
  Graph complete_;
  TypeMap phi_;
  IrrepTable irreps_;
  Representation external_;
  Representation internal_;
  Representation internal_complete_;
  IsotypicBasis external_basis_;
  IsotypicBasis internal_basis_;
  IsotypicBasis internal_complete_basis_;
  Eigen::MatrixXd fixed_;
};

enum class GraphChoice { G, Complete };

struct IrrepBlock {
  std::string name;
  int degree = 1;
  Eigen::MatrixXd block;  ///< dim V_i^(t) x dim V_e^(t)
  RankReport rank;
};

struct BlockDecomposition {
  std::vector<IrrepBlock> blocks;
  Eigen::MatrixXd t_e;                ///< B_e, orthogonal dn x dn
  Eigen::MatrixXd t_i;                ///< B_i, orthogonal m x m
  double norm = 0.0;                  ///< ||R||_2
  double off_block_residual = 0.0;    ///< Frobenius mass outside the blocks / ||R||_2
  RankReport full_rank;               ///< rank of R at the same absolute cutoff
};

/// Rank cutoff used for every block and restricted rank of one configuration:
/// `relative` times ||R(graph, p)||_2.
double rank_cutoff(const Graph& graph, const Configuration& config, double relative);

/// R~ = B_i^T R B_e split into per-irrep blocks. Throws ValidationError when the
/// off-block residual exceeds tol.off_block_relative.
BlockDecomposition block_diagonalize(const SymmetryContext& ctx, const Configuration& config,
                                     GraphChoice choice = GraphChoice::G, const Tolerances& tol = {});
BlockDecomposition block_diagonalize(const Framework& fw, const TypeMap& phi, const Tolerances& tol = {});

/// Orthonormal basis of W_e^(t) = P_t(rigid motions) ∩ rigid motions.
struct SymmetricRigidMotions {
  Eigen::MatrixXd basis;
  bool spanning = false;  ///< points affinely span R^d
};

SymmetricRigidMotions symmetric_rigid_motions(const SymmetryContext& ctx, const Configuration& config, int t,
                                              const Tolerances& tol = {});
SymmetricRigidMotions symmetric_rigid_motions(const Framework& fw, const TypeMap& phi, int t,
                                              const Tolerances& tol = {});

struct MaxwellRow {
  std::string irrep;
  int dim_vi = 0;
  int dim_ve = 0;
  int dim_we = 0;
  int slack = 0;  ///< dim_ve - dim_we - dim_vi
};

struct MaxwellCount {
  std::vector<MaxwellRow> rows;
  bool spanning = false;
};

MaxwellCount maxwell_counts(const SymmetryContext& ctx, const Configuration& config, const Tolerances& tol = {});
MaxwellCount maxwell_counts(const Framework& fw, const TypeMap& phi, const Tolerances& tol = {});

/// Orthonormal dn x k basis of ker(R~_1) mapped to R^{dn}, with W_e^(1) removed.
Eigen::MatrixXd fully_symmetric_flexes(const SymmetryContext& ctx, const Configuration& config,
                                       const Tolerances& tol = {});
Eigen::MatrixXd fully_symmetric_flexes(const Framework& fw, const TypeMap& phi, const Tolerances& tol = {});

/// Orthonormal m x k basis of the left kernel of R~_1 mapped to R^m.
Eigen::MatrixXd fully_symmetric_self_stresses(const SymmetryContext& ctx, const Configuration& config,
                                              const Tolerances& tol = {});
Eigen::MatrixXd fully_symmetric_self_stresses(const Framework& fw, const TypeMap& phi, const Tolerances& tol = {});

/// rank(R(graph, p) B_U) at cutoff tol.rank_relative * ||R(graph, p)||.
RankReport restricted_rank(const SymmetryContext& ctx, const Configuration& config, GraphChoice choice,
                           const Tolerances& tol = {});
RankReport restricted_rank(const Framework& fw, const TypeMap& phi, GraphChoice choice, const Tolerances& tol = {});

/// Same as restricted_rank but on an arbitrary orthonormal subspace basis.
RankReport rank_on_subspace(const Graph& graph, const Configuration& config, const Eigen::MatrixXd& basis,
                            double relative);

}  // namespace symflex
