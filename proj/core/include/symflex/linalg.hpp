#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace symflex {

/// Result of a numerical rank computation.
struct RankReport {
  int rank = 0;
  int nullity = 0;                     ///< column count minus rank
  std::vector<double> singular_values; ///< descending
  double tolerance_used = 0.0;         ///< absolute cutoff; rank counts values strictly above it
};

/// Numerical rank by singular values. Without `tol` the cutoff is
/// max(rows, cols) * epsilon * largest singular value.
/// Throws InvalidArgument on non-finite entries.
RankReport rank_with_tolerance(const Eigen::MatrixXd& matrix, std::optional<double> tol = std::nullopt);

/// Rank with a cutoff of `relative` times the largest singular value.
RankReport relative_rank(const Eigen::MatrixXd& matrix, double relative);

/// Tolerances shared by the symmetry analysis. The same relative rank cutoff
/// must be used whenever ranks at nearby configurations are compared.
struct Tolerances {
  double rank_relative = 1e-9;      ///< singular values below this * sigma_max count as zero
  double subspace = 1e-8;           ///< cutoff on sines of principal angles
  double symmetry_relative = 1e-9;  ///< x(p_v) = p_{phi(x)(v)} residual relative to configuration scale
  double off_block_relative = 1e-9; ///< block-diagonalization leakage relative to ||R||

  /// Defaults, with `rank_relative` taken from SYMFLEX_RANK_TOL when set.
  static Tolerances from_environment();
};

/// Name of the environment variable overriding the default relative rank tolerance.
inline constexpr const char* kRankToleranceEnv = "SYMFLEX_RANK_TOL";

/// Orthonormal basis (columns) of the column space of `a`.
Eigen::MatrixXd column_basis(const Eigen::MatrixXd& a, double relative);

/// Orthonormal basis (columns) of the null space of `a`; `cols` columns when `a` has no rows.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double relative);

/// Orthonormal basis of {y : y^T a = 0}.
Eigen::MatrixXd left_null_space(const Eigen::MatrixXd& a, double relative);

/// Orthonormal basis of span(a) ∩ span(b). Both inputs must have orthonormal
/// columns; `angle_tol` is an absolute cutoff on principal-angle sines.
Eigen::MatrixXd subspace_intersection(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double angle_tol);

/// Orthonormal basis of the part of span(a) orthogonal to span(b). Both bases
/// orthonormal and span(b) contained in span(a).
Eigen::MatrixXd orthogonal_complement_within(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double angle_tol);

/// Sine of the largest principal angle between two subspaces given by
/// orthonormal bases; 1 when the dimensions differ.
double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Spectral norm (largest singular value); zero for empty matrices.
double spectral_norm(const Eigen::MatrixXd& a);

}  // namespace symflex
