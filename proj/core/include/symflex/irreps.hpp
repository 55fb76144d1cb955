#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symflex/symmetry.hpp"

namespace symflex {

/// One real irreducible character. Conjugate pairs of complex irreps of C_m
/// are merged into a single real character with `real_factor` 2.
struct IrrepCharacter {
  std::string name;             ///< "A'", "A''", "A", "B", "E1", "A1", "A2", "B1", "B2", ...
  int degree = 1;               ///< character value at the identity
  int real_factor = 1;          ///< sum_x chi(x)^2 = |S| * real_factor
  std::vector<double> values;   ///< per group element, canonical order
};

/// Real character table. Index 0 is always the trivial character.
struct IrrepTable {
  SymmetryGroup group;
  std::vector<IrrepCharacter> characters;

  int size() const noexcept { return static_cast<int>(characters.size()); }
  const IrrepCharacter& operator[](int t) const { return characters.at(static_cast<std::size_t>(t)); }
  /// Index of the named irrep, or -1.
  int find(const std::string& name) const;
};

IrrepTable irreducible_characters(const SymmetryGroup& group);

/// P_t = d_t / (|S| * real_factor) * sum_x chi_t(x) H(x). Throws
/// InvalidArgument when `t` is out of range or the representation does not
/// have one matrix per group element.
Eigen::MatrixXd isotypic_projector(const Representation& rep, const IrrepTable& table, int t);

/// Orthonormal bases of the isotypic components of a representation.
struct IsotypicBasis {
  std::vector<Eigen::MatrixXd> components;  ///< per irrep: degree x dim
  std::vector<int> multiplicities;          ///< dim / d_t

  int dimension(int t) const { return static_cast<int>(components.at(static_cast<std::size_t>(t)).cols()); }
  /// Columns of all components, concatenated in irrep order (an orthogonal matrix).
  Eigen::MatrixXd stacked() const;
};

IsotypicBasis symmetry_adapted_basis(const Representation& rep, const IrrepTable& table);

/// Orthonormal basis of U = intersection over x of ker(M^(x) - P_phi(x)),
/// computed from the kernels directly (independent of the projectors).
Eigen::MatrixXd fixed_subspace_basis(const TypeMap& phi, int dim);

}  // namespace symflex
