#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "symflex/certify.hpp"
#include "symflex/framework.hpp"
#include "symflex/symmetry.hpp"

namespace symflex {

inline constexpr const char* kDocumentFormat = "symflex-framework";
inline constexpr int kDocumentVersion = 1;

struct GroupSpec {
  GroupKind kind = GroupKind::Trivial;
  int order = 1;  ///< m for Cm/Cmv
  std::optional<Eigen::VectorXd> axis;
  std::optional<Eigen::VectorXd> mirror_normal;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct DocumentOptions {
  std::optional<double> rank_tolerance;  ///< relative rank cutoff
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<double> radius;          ///< regularity radius relative to scale
  bool generic_sample = false;           ///< coordinates came from the generic sampler

  friend bool operator==(const DocumentOptions&, const DocumentOptions&) = default;
};

/// In-memory form of a .fw file. Indices are 0-based here and 1-based on disk.
struct FrameworkDocument {
  int dimension = 0;
  int vertex_count = 0;
  std::vector<std::string> labels;  ///< empty or one per vertex
  std::vector<Edge> edges;
  std::vector<std::vector<double>> coordinates;
  GroupSpec group;
  std::map<std::string, Permutation> phi;  ///< generator label ("C<m>" or "s") -> permutation
  DocumentOptions options;

  Graph graph() const;
  Configuration configuration() const;
  Framework framework() const;
  SymmetryGroup symmetry_group() const;
  TypeMap type_map() const;
  /// Tolerances with the document's rank_tolerance applied over `base`.
  Tolerances tolerances(const Tolerances& base = Tolerances::from_environment()) const;
  CertifyPolicy policy(const Tolerances& base = Tolerances::from_environment()) const;

  friend bool operator==(const FrameworkDocument&, const FrameworkDocument&) = default;
};

/// Parses and checks a document: JSON syntax (ParseError with line and
/// column), schema and graph errors (ParseError), and the type map's
/// automorphism and homomorphism conditions (ValidationError naming the
/// offending edge image). The symmetry residual is not checked here.
FrameworkDocument parse_framework_file(const std::string& text);

/// Canonical text: sorted keys, two-space indent, 17 significant digits.
std::string write_framework_file(const FrameworkDocument& doc);

nlohmann::json to_json(const FrameworkDocument& doc);
FrameworkDocument from_json(const nlohmann::json& j);

/// Deterministic rendering used for every file and report the library writes.
std::string canonical_json(const nlohmann::json& j);

/// Builds a document from library objects (phi given on generators).
FrameworkDocument make_document(const Graph& graph, const Configuration& config, const TypeMap& phi);

}  // namespace symflex
