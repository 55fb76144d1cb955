#include "symflex/irreps.hpp"

#include <cmath>
#include <numbers>

#include "symflex/error.hpp"

namespace symflex {

using Eigen::MatrixXd;

int IrrepTable::find(const std::string& name) const {
  for (int t = 0; t < size(); ++t)
    if (characters[static_cast<std::size_t>(t)].name == name) return t;
  return -1;
}

namespace {

// E_k characters of C_m, 1 <= k < m/2.
std::vector<int> two_dimensional_indices(int m) {
  std::vector<int> ks;
  for (int k = 1; 2 * k < m; ++k) ks.push_back(k);
  return ks;
}

std::string e_name(int k, std::size_t count) { return count == 1 ? "E" : "E" + std::to_string(k); }

}  // namespace

IrrepTable irreducible_characters(const SymmetryGroup& group) {
  IrrepTable table;
  table.group = group;
  const auto& els = group.elements();
  auto per_element = [&](auto&& f) {
    std::vector<double> v;
    v.reserve(els.size());
    for (const auto& e : els) v.push_back(f(e));
    return v;
  };
  const int m = group.rotation_order();
  const auto ks = two_dimensional_indices(m);
  auto sign = [](int j) { return j % 2 == 0 ? 1.0 : -1.0; };
  auto two_cos = [m](int k, int j) { return 2.0 * std::cos(2.0 * std::numbers::pi * k * j / m); };

  switch (group.kind()) {
    case GroupKind::Trivial:
      table.characters.push_back({"A", 1, 1, {1.0}});
      break;
    case GroupKind::Cs:
      table.characters.push_back({"A'", 1, 1, {1.0, 1.0}});
      table.characters.push_back({"A''", 1, 1, {1.0, -1.0}});
      break;
    case GroupKind::Cm:
      table.characters.push_back({"A", 1, 1, per_element([](const GroupElement&) { return 1.0; })});
      if (m % 2 == 0)
        table.characters.push_back({"B", 1, 1, per_element([&](const GroupElement& e) { return sign(e.rotation_power); })});
      for (int k : ks)
        table.characters.push_back(
            {e_name(k, ks.size()), 2, 2, per_element([&](const GroupElement& e) { return two_cos(k, e.rotation_power); })});
      break;
    case GroupKind::Cmv:
      table.characters.push_back({"A1", 1, 1, per_element([](const GroupElement&) { return 1.0; })});
      table.characters.push_back({"A2", 1, 1, per_element([](const GroupElement& e) { return e.reflection ? -1.0 : 1.0; })});
      if (m % 2 == 0) {
        table.characters.push_back({"B1", 1, 1, per_element([&](const GroupElement& e) { return sign(e.rotation_power); })});
        table.characters.push_back({"B2", 1, 1, per_element([&](const GroupElement& e) {
                                      return e.reflection ? -sign(e.rotation_power) : sign(e.rotation_power);
                                    })});
      }
      for (int k : ks)
        table.characters.push_back({e_name(k, ks.size()), 2, 1, per_element([&](const GroupElement& e) {
                                      return e.reflection ? 0.0 : two_cos(k, e.rotation_power);
                                    })});
      break;
  }
  return table;
}

MatrixXd isotypic_projector(const Representation& rep, const IrrepTable& table, int t) {
  if (t < 0 || t >= table.size())
    throw InvalidArgument("irrep index " + std::to_string(t + 1) + " out of range 1.." + std::to_string(table.size()));
  const int order = table.group.size();
  if (static_cast<int>(rep.matrices.size()) != order)
    throw InvalidArgument("representation has " + std::to_string(rep.matrices.size()) + " matrices, group has " +
                          std::to_string(order) + " elements");
  const auto& chi = table[t];
  MatrixXd p = MatrixXd::Zero(rep.degree, rep.degree);
  for (int x = 0; x < order; ++x) p += chi.values[static_cast<std::size_t>(x)] * rep.matrices[static_cast<std::size_t>(x)];
  p *= static_cast<double>(chi.degree) / (static_cast<double>(order) * chi.real_factor);
  return 0.5 * (p + p.transpose());
}

MatrixXd IsotypicBasis::stacked() const {
  Eigen::Index rows = components.empty() ? 0 : components.front().rows();
  Eigen::Index cols = 0;
  for (const auto& c : components) cols += c.cols();
  MatrixXd out(rows, cols);
  Eigen::Index at = 0;
  for (const auto& c : components) {
    out.middleCols(at, c.cols()) = c;
    at += c.cols();
  }
  return out;
}

IsotypicBasis symmetry_adapted_basis(const Representation& rep, const IrrepTable& table) {
  IsotypicBasis out;
  for (int t = 0; t < table.size(); ++t) {
    const MatrixXd p = isotypic_projector(rep, table, t);
    MatrixXd basis(rep.degree, 0);
    if (rep.degree > 0) {
      // Eigenvalues of an orthogonal projector are 0 or 1.
      Eigen::SelfAdjointEigenSolver<MatrixXd> eig(p);
      int count = 0;
      for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
        if (eig.eigenvalues()(i) > 0.5) ++count;
      basis = eig.eigenvectors().rightCols(count);
    }
    out.multiplicities.push_back(static_cast<int>(basis.cols()) / table[t].degree);
    out.components.push_back(std::move(basis));
  }
  return out;
}

MatrixXd fixed_subspace_basis(const TypeMap& phi, int dim) {
  const auto& group = phi.group();
  const int n = phi.vertex_count();
  const Eigen::Index size = static_cast<Eigen::Index>(dim) * n;
  MatrixXd stacked(size * group.size(), size);
  for (int x = 0; x < group.size(); ++x)
    stacked.middleRows(size * x, size) = block_operation_matrix(group, x, n) - block_permutation_matrix(phi, x, dim);
  return null_space(stacked, 1e-10);
}

}  // namespace symflex
