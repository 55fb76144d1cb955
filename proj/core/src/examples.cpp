#include "symflex/examples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "symflex/block_rigidity.hpp"
#include "symflex/certify.hpp"
#include "symflex/error.hpp"

namespace symflex {

using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> values) {
  VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

std::vector<Edge> one_based(std::initializer_list<std::pair<int, int>> pairs) {
  std::vector<Edge> out;
  for (const auto& [a, b] : pairs) out.push_back({a - 1, b - 1});
  return out;
}

const std::vector<Edge>& octahedron_edges() {
  static const auto edges =
      one_based({{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}, {1, 6}, {2, 6}, {3, 6}, {4, 6}});
  return edges;
}

const std::vector<Edge>& k33_edges() {
  static const auto edges =
      one_based({{1, 4}, {1, 5}, {1, 6}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}, {3, 6}});
  return edges;
}

FrameworkDocument fixed(int dim, std::vector<Edge> edges, std::vector<std::vector<double>> points, GroupSpec group,
                        std::map<std::string, std::string> phi) {
  FrameworkDocument doc;
  doc.dimension = dim;
  doc.vertex_count = static_cast<int>(points.size());
  doc.edges = std::move(edges);
  doc.coordinates = std::move(points);
  doc.group = std::move(group);
  for (const auto& [label, cycles] : phi) doc.phi[label] = parse_cycle_notation(cycles, doc.vertex_count);
  return doc;
}

FrameworkDocument sampled(int dim, int n, std::vector<Edge> edges, GroupSpec group,
                          std::map<std::string, std::string> phi, std::uint64_t seed) {
  FrameworkDocument doc;
  doc.dimension = dim;
  doc.vertex_count = n;
  doc.edges = std::move(edges);
  doc.group = std::move(group);
  for (const auto& [label, cycles] : phi) doc.phi[label] = parse_cycle_notation(cycles, n);
  const SymmetryContext ctx(doc.graph(), doc.type_map());
  const Configuration config = sample_symmetric_generic(ctx, seed);
  for (int i = 0; i < n; ++i) {
    const auto p = config.point(i);
    doc.coordinates.emplace_back(p.data(), p.data() + p.size());
  }
  doc.options.seed = seed;
  doc.options.generic_sample = true;
  return doc;
}

GroupSpec mirror(VectorXd normal) { return {GroupKind::Cs, 1, std::nullopt, std::move(normal)}; }

FrameworkDocument double_suspension(int n, std::uint64_t seed) {
  if (n < 3) throw InvalidArgument("double-suspension needs n >= 3");
  const int polygon = 2 * (n - 1);
  std::vector<Edge> edges;
  for (int i = 0; i < polygon; ++i) {
    const int j = (i + 1) % polygon;
    edges.push_back({std::min(i, j), std::max(i, j)});
  }
  for (int cone : {polygon, polygon + 1})
    for (int i = 0; i < polygon; ++i) edges.push_back({i, cone});
  Permutation half_turn(static_cast<std::size_t>(polygon + 2));
  for (int i = 0; i < polygon; ++i) half_turn[static_cast<std::size_t>(i)] = (i + n - 1) % polygon;
  half_turn[static_cast<std::size_t>(polygon)] = polygon + 1;
  half_turn[static_cast<std::size_t>(polygon + 1)] = polygon;
  return sampled(3, polygon + 2, std::move(edges), {GroupKind::Cm, 2, vec({0, 0, 1}), std::nullopt},
                 {{"C2", to_cycle_notation(half_turn)}}, seed);
}

}  // namespace

std::vector<std::string> builtin_example_names() {
  return {"triangle-cs", "k33-phi-a",       "k33-phi-b",      "k33-hexagon",
          "bricard-c2",  "bricard-cs",      "octahedron-c2v", "octahedron-cs-isostatic",
          "double-suspension", "square-4cycle"};
}

FrameworkDocument builtin_example(const std::string& name, const ExampleParams& params) {
  const auto seed = params.seed;
  if (name == "triangle-cs")
    return fixed(2, one_based({{1, 2}, {1, 3}, {2, 3}}), {{-1, 0}, {1, 0}, {0, 2}}, mirror(vec({1, 0})),
                 {{"s", "(1 2)"}});
  if (name == "k33-phi-a") return sampled(2, 6, k33_edges(), mirror(vec({1, 0})), {{"s", "(1 2)(5 6)"}}, seed);
  if (name == "k33-phi-b") return sampled(2, 6, k33_edges(), mirror(vec({1, 0})), {{"s", "(1 4)(2 5)(3 6)"}}, seed);
  if (name == "k33-hexagon") {
    std::vector<std::vector<double>> points;
    for (double deg : {60.0, 90.0, 120.0, 200.0, 270.0, 340.0}) {
      const double a = deg * std::numbers::pi / 180.0;
      points.push_back({1.2 * std::cos(a), 1.2 * std::sin(a)});
    }
    // Exact mirror images so the symmetry residual is zero.
    points[1][0] = 0.0;
    points[4][0] = 0.0;
    points[2] = {-points[0][0], points[0][1]};
    points[5] = {-points[3][0], points[3][1]};
    return fixed(2, one_based({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}, {2, 5}, {3, 6}, {1, 4}}), std::move(points),
                 mirror(vec({1, 0})), {{"s", "(1 3)(4 6)"}});
  }
  if (name == "bricard-c2")
    return sampled(3, 6, octahedron_edges(), {GroupKind::Cm, 2, vec({0, 0, 1}), std::nullopt},
                   {{"C2", "(1 3)(2 4)(5 6)"}}, seed);
  if (name == "bricard-cs") return sampled(3, 6, octahedron_edges(), mirror(vec({1, 0, 0})), {{"s", "(1 3)(5 6)"}}, seed);
  if (name == "octahedron-c2v")
    return sampled(3, 6, octahedron_edges(), {GroupKind::Cmv, 2, vec({0, 0, 1}), vec({1, 0, 0})},
                   {{"C2", "(1 3)(2 4)(5 6)"}, {"s", "(1 3)(5 6)"}}, seed);
  if (name == "octahedron-cs-isostatic")
    return sampled(3, 6, octahedron_edges(), mirror(vec({1, 0, 0})), {{"s", "(2 4)"}}, seed);
  if (name == "double-suspension") return double_suspension(params.n, seed);
  if (name == "square-4cycle")
    return fixed(2, one_based({{1, 2}, {2, 3}, {3, 4}, {1, 4}}), {{1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                 mirror(vec({0, 1})), {{"s", "(2 4)"}});
  throw InvalidArgument("unknown example '" + name + "'");
}

}  // namespace symflex
