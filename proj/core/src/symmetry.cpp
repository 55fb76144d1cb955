#include "symflex/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "symflex/error.hpp"

namespace symflex {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Trivial: return "C1";
    case GroupKind::Cs: return "Cs";
    case GroupKind::Cm: return "Cm";
    case GroupKind::Cmv: return "Cmv";
  }
  return "?";
}

GroupKind group_kind_from_string(const std::string& text) {
  if (text == "C1") return GroupKind::Trivial;
  if (text == "Cs") return GroupKind::Cs;
  if (text == "Cm") return GroupKind::Cm;
  if (text == "Cmv") return GroupKind::Cmv;
  throw InvalidArgument("unknown group kind '" + text + "' (expected C1, Cs, Cm or Cmv)");
}

namespace {

constexpr double kUnitTolerance = 1e-9;

VectorXd require_unit(const std::optional<VectorXd>& v, int dim, const char* what) {
  if (!v) throw InvalidArgument(std::string(what) + " is required for this group");
  if (v->size() != dim)
    throw InvalidArgument(std::string(what) + " must have " + std::to_string(dim) + " components");
  if (!v->allFinite() || std::abs(v->norm() - 1.0) > kUnitTolerance)
    throw InvalidArgument(std::string(what) + " must be a unit vector");
  return *v;
}

MatrixXd rotation_matrix(int dim, const VectorXd& axis, double angle) {
  if (dim == 2) {
    MatrixXd r(2, 2);
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return r;
  }
  const Eigen::Vector3d a = axis.head<3>();
  return Eigen::AngleAxisd(angle, a).toRotationMatrix();
}

MatrixXd reflection_matrix(const VectorXd& normal) {
  return MatrixXd::Identity(normal.size(), normal.size()) - 2.0 * normal * normal.transpose();
}

std::string rotation_label(int m, int k) {
  std::string base = "C" + std::to_string(m);
  return k == 1 ? base : base + "^" + std::to_string(k);
}

}  // namespace

SymmetryGroup make_group(GroupKind kind, int dim, int order, const GroupGeometry& geometry) {
  if (dim != 2 && dim != 3) throw InvalidArgument("symmetry groups are supported in dimensions 2 and 3 only");
  SymmetryGroup g;
  g.kind_ = kind;
  g.dim_ = dim;
  g.m_ = (kind == GroupKind::Cm || kind == GroupKind::Cmv) ? order : 1;
  if ((kind == GroupKind::Cm || kind == GroupKind::Cmv) && order < 2)
    throw InvalidArgument("rotation order m must be at least 2");

  const MatrixXd identity = MatrixXd::Identity(dim, dim);
  VectorXd axis;
  VectorXd normal;
  const bool rotations = kind == GroupKind::Cm || kind == GroupKind::Cmv;
  const bool reflections = kind == GroupKind::Cs || kind == GroupKind::Cmv;
  if (rotations && dim == 3) {
    axis = require_unit(geometry.axis, 3, "rotation axis");
    g.geometry_.axis = axis;
  }
  if (reflections) {
    normal = require_unit(geometry.mirror_normal, dim, "mirror normal");
    g.geometry_.mirror_normal = normal;
    if (kind == GroupKind::Cmv && dim == 3 && std::abs(normal.dot(axis)) > kUnitTolerance)
      throw InvalidArgument("the mirror of a Cmv group must contain the rotation axis");
  }

  g.elements_.push_back({"Id", identity, 0, false});
  if (rotations) {
    for (int k = 1; k < g.m_; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / g.m_;
      g.elements_.push_back({rotation_label(g.m_, k), rotation_matrix(dim, axis, angle), k, false});
    }
  }
  if (reflections) {
    const MatrixXd s = reflection_matrix(normal);
    g.elements_.push_back({"s", s, 0, true});
    if (kind == GroupKind::Cmv) {
      for (int k = 1; k < g.m_; ++k)
        g.elements_.push_back({"s*" + rotation_label(g.m_, k), s * g.elements_[static_cast<std::size_t>(k)].matrix, k, true});
    }
  }

  const int n = g.size();
  g.table_.assign(static_cast<std::size_t>(n * n), -1);
  g.inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const MatrixXd prod = g.elements_[static_cast<std::size_t>(a)].matrix * g.elements_[static_cast<std::size_t>(b)].matrix;
      int best = -1;
      double best_err = 1e-8;
      for (int c = 0; c < n; ++c) {
        const double err = (prod - g.elements_[static_cast<std::size_t>(c)].matrix).norm();
        if (err < best_err) {
          best_err = err;
          best = c;
        }
      }
      if (best < 0) throw Error("internal error: group is not closed under products");
      g.table_[static_cast<std::size_t>(a * n + b)] = best;
      if (best == 0) g.inverse_[static_cast<std::size_t>(a)] = b;
    }
  }
  return g;
}

std::vector<int> SymmetryGroup::generators() const {
  switch (kind_) {
    case GroupKind::Trivial: return {};
    case GroupKind::Cs: return {1};
    case GroupKind::Cm: return {1};
    case GroupKind::Cmv: return {1, m_};
  }
  return {};
}

std::string SymmetryGroup::generator_label(int element_index) const {
  const auto& e = element(element_index);
  if (e.reflection) return "s";
  return "C" + std::to_string(m_);
}

int SymmetryGroup::find_label(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (elements_[static_cast<std::size_t>(i)].label == label) return i;
  return -1;
}

std::string SymmetryGroup::schoenflies() const {
  switch (kind_) {
    case GroupKind::Trivial: return "C1";
    case GroupKind::Cs: return "Cs";
    case GroupKind::Cm: return "C" + std::to_string(m_);
    case GroupKind::Cmv: return "C" + std::to_string(m_) + "v";
  }
  return "?";
}

Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t v = 0; v < b.size(); ++v) out[v] = a[static_cast<std::size_t>(b[v])];
  return out;
}

bool is_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

std::string to_cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<bool> done(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (done[start] || p[start] == static_cast<int>(start)) continue;
    out += "(";
    std::size_t v = start;
    bool first = true;
    while (!done[v]) {
      done[v] = true;
      if (!first) out += " ";
      out += std::to_string(v + 1);
      first = false;
      v = static_cast<std::size_t>(p[v]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

Permutation parse_cycle_notation(const std::string& text, int n) {
  Permutation p = identity_permutation(n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw InvalidArgument("expected '(' at position " + std::to_string(i + 1) + " in '" + text + "'");
    ++i;
    std::vector<int> cycle;
    while (true) {
      skip_space();
      if (i >= text.size()) throw InvalidArgument("unterminated cycle in '" + text + "'");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw InvalidArgument("unexpected character '" + std::string(1, text[i]) + "' in '" + text + "'");
      int value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        if (value > n) break;
        ++i;
      }
      if (value < 1 || value > n)
        throw InvalidArgument("vertex " + std::to_string(value) + " out of range 1.." + std::to_string(n) + " in '" + text + "'");
      if (used[static_cast<std::size_t>(value - 1)])
        throw InvalidArgument("vertex " + std::to_string(value) + " appears twice in '" + text + "'");
      used[static_cast<std::size_t>(value - 1)] = true;
      cycle.push_back(value - 1);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      p[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    skip_space();
  }
  return p;
}

TypeMap TypeMap::from_generators(const SymmetryGroup& group, int vertex_count,
                                 const std::vector<Permutation>& generator_images) {
  const auto gens = group.generators();
  if (generator_images.size() != gens.size())
    throw InvalidArgument("expected " + std::to_string(gens.size()) + " generator images, got " +
                          std::to_string(generator_images.size()));
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& img = generator_images[k];
    if (static_cast<int>(img.size()) != vertex_count || !is_permutation(img))
      throw InvalidArgument("image of generator " + group.generator_label(gens[k]) + " is not a permutation of " +
                            std::to_string(vertex_count) + " vertices");
  }
  const Permutation id = identity_permutation(vertex_count);
  Permutation rot = id;
  Permutation refl = id;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (group.element(gens[k]).reflection)
      refl = generator_images[k];
    else
      rot = generator_images[k];
  }
  std::vector<Permutation> images;
  images.reserve(static_cast<std::size_t>(group.size()));
  for (const auto& e : group.elements()) {
    Permutation p = id;
    for (int k = 0; k < e.rotation_power; ++k) p = compose(rot, p);
    if (e.reflection) p = compose(refl, p);
    images.push_back(std::move(p));
  }
  return from_elements(group, std::move(images));
}

TypeMap TypeMap::from_elements(const SymmetryGroup& group, std::vector<Permutation> images) {
  if (static_cast<int>(images.size()) != group.size())
    throw InvalidArgument("type map needs one permutation per group element");
  TypeMap t;
  t.group_ = group;
  t.n_ = images.empty() ? 0 : static_cast<int>(images.front().size());
  for (const auto& p : images)
    if (static_cast<int>(p.size()) != t.n_ || !is_permutation(p))
      throw InvalidArgument("type map entries must be permutations of the same vertex set");
  t.perms_ = std::move(images);
  return t;
}

int TypeMap::edge_image(const Graph& graph, int element_index, int edge_index) const {
  const auto& e = graph.edge(edge_index);
  const auto& p = (*this)[element_index];
  return graph.find_edge(p[static_cast<std::size_t>(e.first)], p[static_cast<std::size_t>(e.second)]);
}

std::vector<TypeMapIssue> check_type_map(const Graph& graph, const TypeMap& phi) {
  std::vector<TypeMapIssue> issues;
  const auto& group = phi.group();
  if (phi.vertex_count() != graph.vertex_count()) {
    issues.push_back({TypeMapIssue::Kind::DimensionMismatch, -1, -1, -1, 0.0,
                      "type map acts on " + std::to_string(phi.vertex_count()) + " vertices, graph has " +
                          std::to_string(graph.vertex_count())});
    return issues;
  }
  if (phi[0] != identity_permutation(graph.vertex_count()))
    issues.push_back({TypeMapIssue::Kind::NotHomomorphism, 0, -1, -1, 0.0, "phi(Id) is not the identity"});
  for (int x = 0; x < group.size(); ++x) {
    for (int k = 0; k < graph.edge_count(); ++k) {
      if (phi.edge_image(graph, x, k) >= 0) continue;
      const auto& e = graph.edge(k);
      const auto& p = phi[x];
      issues.push_back({TypeMapIssue::Kind::NotAutomorphism, x, -1, k, 0.0,
                        "phi(" + group.element(x).label + ") = " + to_cycle_notation(p) + " is not an automorphism: edge {" +
                            std::to_string(e.first + 1) + "," + std::to_string(e.second + 1) + "} maps to {" +
                            std::to_string(p[static_cast<std::size_t>(e.first)] + 1) + "," +
                            std::to_string(p[static_cast<std::size_t>(e.second)] + 1) + "}, which is not an edge"});
    }
  }
  for (int x = 0; x < group.size(); ++x) {
    for (int y = 0; y < group.size(); ++y) {
      if (phi[group.product(x, y)] == compose(phi[x], phi[y])) continue;
      issues.push_back({TypeMapIssue::Kind::NotHomomorphism, group.product(x, y), -1, -1, 0.0,
                        "phi is not a homomorphism: phi(" + group.element(x).label + ") o phi(" + group.element(y).label +
                            ") != phi(" + group.element(group.product(x, y)).label + ")"});
    }
  }
  return issues;
}

TypeMapValidation validate_type_map(const Framework& fw, const TypeMap& phi, double relative) {
  TypeMapValidation out;
  out.issues = check_type_map(fw.graph(), phi);
  const auto& group = phi.group();
  if (group.dim() != fw.dim()) {
    out.issues.push_back({TypeMapIssue::Kind::DimensionMismatch, -1, -1, -1, 0.0,
                          "group acts in dimension " + std::to_string(group.dim()) + ", configuration has dimension " +
                              std::to_string(fw.dim())});
  }
  const bool shapes_ok = std::none_of(out.issues.begin(), out.issues.end(), [](const TypeMapIssue& i) {
    return i.kind == TypeMapIssue::Kind::DimensionMismatch;
  });
  out.tolerance = relative * fw.config().scale();
  if (shapes_ok) {
    const auto& cfg = fw.config();
    out.residuals.assign(static_cast<std::size_t>(group.size()), std::vector<double>(static_cast<std::size_t>(cfg.point_count()), 0.0));
    for (int x = 0; x < group.size(); ++x) {
      const auto& mx = group.element(x).matrix;
      for (int v = 0; v < cfg.point_count(); ++v) {
        const double r = (mx * cfg.point(v) - cfg.point(phi[x][static_cast<std::size_t>(v)])).norm();
        out.residuals[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)] = r;
        if (r > out.max_residual || out.worst_element < 0) {
          if (r >= out.max_residual) {
            out.max_residual = r;
            out.worst_element = x;
            out.worst_vertex = v;
          }
        }
        if (r > out.tolerance) {
          out.issues.push_back({TypeMapIssue::Kind::SymmetryResidual, x, v, -1, r,
                                group.element(x).label + " maps p" + std::to_string(v + 1) + " to within " +
                                    std::to_string(r) + " of p" + std::to_string(phi[x][static_cast<std::size_t>(v)] + 1) +
                                    " (tolerance " + std::to_string(out.tolerance) + ")"});
        }
      }
    }
  }
  out.valid = out.issues.empty();
  return out;
}

void require_valid(const Framework& fw, const TypeMap& phi, double relative) {
  const auto v = validate_type_map(fw, phi, relative);
  if (!v.valid) throw ValidationError(v.issues.front().message);
}

Representation external_representation(const TypeMap& phi, const Graph& graph, int dim) {
  const auto& group = phi.group();
  const int n = graph.vertex_count();
  Representation rep;
  rep.degree = dim * n;
  for (int x = 0; x < group.size(); ++x) {
    MatrixXd h = MatrixXd::Zero(rep.degree, rep.degree);
    for (int v = 0; v < n; ++v) {
      const int w = phi[x][static_cast<std::size_t>(v)];
      h.block(static_cast<Eigen::Index>(dim) * w, static_cast<Eigen::Index>(dim) * v, dim, dim) = group.element(x).matrix;
    }
    rep.matrices.push_back(std::move(h));
  }
  return rep;
}

Representation internal_representation(const TypeMap& phi, const Graph& graph) {
  const auto& group = phi.group();
  const int m = graph.edge_count();
  Representation rep;
  rep.degree = m;
  for (int x = 0; x < group.size(); ++x) {
    MatrixXd h = MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      const int image = phi.edge_image(graph, x, k);
      if (image < 0)
        throw ValidationError("phi(" + group.element(x).label + ") does not map edge " + std::to_string(k + 1) +
                              " to an edge");
      h(image, k) = 1.0;
    }
    rep.matrices.push_back(std::move(h));
  }
  return rep;
}

MatrixXd block_operation_matrix(const SymmetryGroup& group, int element_index, int vertex_count) {
  const int d = group.dim();
  MatrixXd out = MatrixXd::Zero(static_cast<Eigen::Index>(d) * vertex_count, static_cast<Eigen::Index>(d) * vertex_count);
  for (int v = 0; v < vertex_count; ++v)
    out.block(static_cast<Eigen::Index>(d) * v, static_cast<Eigen::Index>(d) * v, d, d) = group.element(element_index).matrix;
  return out;
}

MatrixXd block_permutation_matrix(const TypeMap& phi, int element_index, int dim) {
  const int n = phi.vertex_count();
  MatrixXd out = MatrixXd::Zero(static_cast<Eigen::Index>(dim) * n, static_cast<Eigen::Index>(dim) * n);
  for (int v = 0; v < n; ++v) {
    const int w = phi[element_index][static_cast<std::size_t>(v)];
    out.block(static_cast<Eigen::Index>(dim) * v, static_cast<Eigen::Index>(dim) * w, dim, dim).setIdentity();
  }
  return out;
}

double representation_defect(const SymmetryGroup& group, const Representation& rep) {
  double worst = 0.0;
  for (int x = 0; x < group.size(); ++x)
    for (int y = 0; y < group.size(); ++y)
      worst = std::max(worst, (rep.matrices[static_cast<std::size_t>(x)] * rep.matrices[static_cast<std::size_t>(y)] -
                               rep.matrices[static_cast<std::size_t>(group.product(x, y))])
                                  .norm());
  return worst;
}

}  // namespace symflex
