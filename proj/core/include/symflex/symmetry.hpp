#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symflex/framework.hpp"

namespace symflex {

/// Schoenflies families supported by the library. `Trivial` is C1 = {Id}.
enum class GroupKind { Trivial, Cs, Cm, Cmv };

std::string to_string(GroupKind kind);
/// Parses "C1", "Cs", "Cm", "Cmv" (case-sensitive). Throws InvalidArgument.
GroupKind group_kind_from_string(const std::string& text);

/// Orientation data for make_group. Vectors must be unit length.
///  - d = 3 rotations (Cm, Cmv) need `axis`.
///  - reflections (Cs, Cmv) need `mirror_normal`; for Cmv in d = 3 the mirror
///    must contain the axis.
struct GroupGeometry {
  std::optional<Eigen::VectorXd> axis;
  std::optional<Eigen::VectorXd> mirror_normal;
};

struct GroupElement {
  std::string label;      ///< "Id", "C3", "C3^2", "s", "s*C3^2"
  Eigen::MatrixXd matrix; ///< orthogonal d x d
  int rotation_power = 0; ///< k in C_m^k or s*C_m^k
  bool reflection = false;
};

/// Finite point group with canonical element order: Id, rotations by
/// increasing power, then the reflections s*C_m^k.
class SymmetryGroup {
public:
  SymmetryGroup() = default;

  GroupKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  /// m for Cm/Cmv, 1 for Cs and the trivial group.
  int rotation_order() const noexcept { return m_; }
  int size() const noexcept { return static_cast<int>(elements_.size()); }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  const GroupElement& element(int i) const { return elements_.at(static_cast<std::size_t>(i)); }
  const GroupGeometry& geometry() const noexcept { return geometry_; }

  /// Index of the product element(a) * element(b).
  int product(int a, int b) const { return table_[static_cast<std::size_t>(a * size() + b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }

  /// Generator indices: the rotation C_m (if any) then the reflection s (if any).
  std::vector<int> generators() const;
  /// Label used for each generator in documents: "C<m>" or "s".
  std::string generator_label(int element_index) const;
  int find_label(const std::string& label) const;

  /// "C1", "Cs", "C3", "C2v", ...
  std::string schoenflies() const;

private:
  friend SymmetryGroup make_group(GroupKind kind, int dim, int order, const GroupGeometry& geometry);

  GroupKind kind_ = GroupKind::Trivial;
  int dim_ = 0;
  int m_ = 1;
  GroupGeometry geometry_;
  std::vector<GroupElement> elements_;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

/// Builds the group from geometric parameters. `order` is m for Cm/Cmv and
/// ignored otherwise. Throws InvalidArgument on unsupported dimension,
/// m < 2, missing or non-unit vectors, or a Cmv mirror not containing the axis.
SymmetryGroup make_group(GroupKind kind, int dim, int order, const GroupGeometry& geometry);

/// perm[v] is the image of vertex v (0-based).
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
/// (a ∘ b)(v) = a(b(v)).
Permutation compose(const Permutation& a, const Permutation& b);
bool is_permutation(const Permutation& p);
/// Disjoint-cycle notation with 1-based vertices, e.g. "(1 3)(2 4)"; "()" for the identity.
std::string to_cycle_notation(const Permutation& p);
/// Parses cycle notation (1-based); fixed points may be written as 1-cycles.
/// Throws InvalidArgument.
Permutation parse_cycle_notation(const std::string& text, int n);

/// The homomorphism phi: S -> Aut(G) as one vertex permutation per group element.
class TypeMap {
public:
  TypeMap() = default;

  /// Completes phi from generator images via phi(C^k) = phi(C)^k and
  /// phi(s*C^k) = phi(s) ∘ phi(C)^k. `generator_images` follows
  /// group.generators(). Throws InvalidArgument when a generator image is not
  /// a permutation of 0..n-1.
  static TypeMap from_generators(const SymmetryGroup& group, int vertex_count,
                                 const std::vector<Permutation>& generator_images);

  /// phi given on every element (canonical element order).
  static TypeMap from_elements(const SymmetryGroup& group, std::vector<Permutation> images);

  const SymmetryGroup& group() const noexcept { return group_; }
  int vertex_count() const noexcept { return n_; }
  const Permutation& operator[](int element_index) const { return perms_.at(static_cast<std::size_t>(element_index)); }
  const std::vector<Permutation>& permutations() const noexcept { return perms_; }

  /// Image of edge index k of `graph` under phi(x), or -1 if it is not an edge.
  int edge_image(const Graph& graph, int element_index, int edge_index) const;

private:
  SymmetryGroup group_;
  int n_ = 0;
  std::vector<Permutation> perms_;
};

struct TypeMapIssue {
  enum class Kind { NotAutomorphism, NotHomomorphism, SymmetryResidual, DimensionMismatch };
  Kind kind;
  int element = -1;  ///< group element index
  int vertex = -1;   ///< 0-based, for residual issues
  int edge = -1;     ///< edge index, for automorphism issues
  double residual = 0.0;
  std::string message;
};

struct TypeMapValidation {
  bool valid = false;
  double max_residual = 0.0;       ///< max over x, v of ||M_x p_v - p_phi(x)(v)||
  double tolerance = 0.0;          ///< absolute cutoff used for the residual
  int worst_element = -1;
  int worst_vertex = -1;
  /// residuals[x][v]
  std::vector<std::vector<double>> residuals;
  std::vector<TypeMapIssue> issues;
};

/// Structural checks only: every phi(x) is an automorphism of `graph`, phi is
/// a homomorphism and phi(Id) is the identity.
std::vector<TypeMapIssue> check_type_map(const Graph& graph, const TypeMap& phi);

/// Structural checks plus the symmetry equation M_x p_v = p_phi(x)(v) with
/// tolerance `relative` * configuration scale.
TypeMapValidation validate_type_map(const Framework& fw, const TypeMap& phi, double relative = 1e-9);

/// Throws ValidationError with the first issue when validation fails.
void require_valid(const Framework& fw, const TypeMap& phi, double relative = 1e-9);

/// Matrix representation of the group.
struct Representation {
  int degree = 0;
  std::vector<Eigen::MatrixXd> matrices;  ///< one per group element, canonical order
};

/// H_e(x): the transposed vertex permutation matrix of phi(x) with each 1
/// replaced by M_x (block (phi(x)(v), v) = M_x).
Representation external_representation(const TypeMap& phi, const Graph& graph, int dim);

/// H_i(x): transposed permutation matrix of the edge permutation induced by phi(x).
/// Throws ValidationError when phi(x) does not map edges to edges.
Representation internal_representation(const TypeMap& phi, const Graph& graph);

/// Block-diagonal M^(x) = diag(M_x, ..., M_x) of size dn.
Eigen::MatrixXd block_operation_matrix(const SymmetryGroup& group, int element_index, int vertex_count);

/// P_phi(x): vertex permutation matrix with 1 -> I_d, so that
/// (P p)_v = p_phi(x)(v).
Eigen::MatrixXd block_permutation_matrix(const TypeMap& phi, int element_index, int dim);

/// Max over x, y of ||H(x)H(y) - H(xy)||.
double representation_defect(const SymmetryGroup& group, const Representation& rep);

}  // namespace symflex
