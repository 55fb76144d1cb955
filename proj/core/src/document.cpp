#include "symflex/document.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "symflex/error.hpp"

namespace symflex {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

bool is_scalar(const json& j) { return !j.is_array() && !j.is_object(); }

void render(const json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(it.key()).dump() + ": ";
        render(it.value(), indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          render(j[i], indent, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        render(j[i], indent + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void fail(const std::string& message) { throw ParseError(message); }

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing required field '" + key + "'");
  return *it;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!ok.count(it.key())) fail(where + ": unknown field '" + it.key() + "'");
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + " must be an integer");
  const auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail(where + " is out of range");
  return static_cast<int>(v);
}

double as_double(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where + " must be finite");
  return v;
}

Eigen::VectorXd as_vector(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = as_double(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

std::string canonical_json(const json& j) {
  std::string out;
  render(j, 0, out);
  out += "\n";
  return out;
}

Graph FrameworkDocument::graph() const { return Graph(vertex_count, edges); }

Configuration FrameworkDocument::configuration() const { return Configuration::from_points(coordinates); }

Framework FrameworkDocument::framework() const { return Framework(graph(), configuration()); }

SymmetryGroup FrameworkDocument::symmetry_group() const {
  return make_group(group.kind, dimension, group.order, GroupGeometry{group.axis, group.mirror_normal});
}

TypeMap FrameworkDocument::type_map() const {
  const SymmetryGroup g = symmetry_group();
  std::vector<Permutation> images;
  for (int gen : g.generators()) {
    const auto label = g.generator_label(gen);
    auto it = phi.find(label);
    if (it == phi.end()) throw ParseError("phi: missing image of generator '" + label + "'");
    images.push_back(it->second);
  }
  return TypeMap::from_generators(g, vertex_count, images);
}

Tolerances FrameworkDocument::tolerances(const Tolerances& base) const {
  Tolerances t = base;
  if (options.rank_tolerance) t.rank_relative = *options.rank_tolerance;
  return t;
}

CertifyPolicy FrameworkDocument::policy(const Tolerances& base) const {
  CertifyPolicy p;
  p.tol = tolerances(base);
  if (options.seed) p.seed = *options.seed;
  if (options.trials) p.trials = *options.trials;
  if (options.radius) p.radius_relative = *options.radius;
  p.generic_sample = options.generic_sample;
  return p;
}

json to_json(const FrameworkDocument& doc) {
  json j;
  j["format"] = kDocumentFormat;
  j["format_version"] = kDocumentVersion;
  j["dimension"] = doc.dimension;
  json vertices;
  vertices["count"] = doc.vertex_count;
  if (!doc.labels.empty()) vertices["labels"] = doc.labels;
  j["vertices"] = vertices;
  json edges = json::array();
  for (const auto& e : doc.edges) edges.push_back({e.first + 1, e.second + 1});
  j["edges"] = edges;
  json coords = json::array();
  for (const auto& p : doc.coordinates) {
    json row = json::array();
    for (double x : p) row.push_back(x);
    coords.push_back(row);
  }
  j["coordinates"] = coords;
  json group;
  group["kind"] = to_string(doc.group.kind);
  if (doc.group.kind == GroupKind::Cm || doc.group.kind == GroupKind::Cmv) group["order"] = doc.group.order;
  if (doc.group.axis) group["axis"] = vector_json(*doc.group.axis);
  if (doc.group.mirror_normal) group["mirror_normal"] = vector_json(*doc.group.mirror_normal);
  j["group"] = group;
  json phi = json::object();
  for (const auto& [label, perm] : doc.phi) phi[label] = to_cycle_notation(perm);
  j["phi"] = phi;
  json options = json::object();
  if (doc.options.rank_tolerance) options["rank_tolerance"] = *doc.options.rank_tolerance;
  if (doc.options.seed) options["seed"] = *doc.options.seed;
  if (doc.options.trials) options["trials"] = *doc.options.trials;
  if (doc.options.radius) options["radius"] = *doc.options.radius;
  if (doc.options.generic_sample) options["generic_sample"] = true;
  if (!options.empty()) j["options"] = options;
  return j;
}

FrameworkDocument from_json(const json& j) {
  if (!j.is_object()) fail("document must be a JSON object");
  reject_unknown(j, {"format", "format_version", "dimension", "vertices", "edges", "coordinates", "group", "phi", "options"},
                 "document");
  const json& format = require(j, "format", "document");
  if (!format.is_string() || format.get<std::string>() != kDocumentFormat)
    fail(std::string("format must be \"") + kDocumentFormat + "\"");
  const int version = as_int(require(j, "format_version", "document"), "format_version");
  if (version != kDocumentVersion) fail("unsupported format_version " + std::to_string(version));

  FrameworkDocument doc;
  doc.dimension = as_int(require(j, "dimension", "document"), "dimension");
  if (doc.dimension != 2 && doc.dimension != 3) fail("dimension must be 2 or 3");

  const json& vertices = require(j, "vertices", "document");
  if (!vertices.is_object()) fail("vertices must be an object");
  reject_unknown(vertices, {"count", "labels"}, "vertices");
  doc.vertex_count = as_int(require(vertices, "count", "vertices"), "vertices.count");
  if (doc.vertex_count < 1) fail("vertices.count must be positive");
  if (auto it = vertices.find("labels"); it != vertices.end()) {
    if (!it->is_array() || static_cast<int>(it->size()) != doc.vertex_count)
      fail("vertices.labels must be an array of " + std::to_string(doc.vertex_count) + " strings");
    for (const auto& l : *it) {
      if (!l.is_string()) fail("vertices.labels must contain strings");
      doc.labels.push_back(l.get<std::string>());
    }
  }

  const json& edges = require(j, "edges", "document");
  if (!edges.is_array()) fail("edges must be an array of vertex pairs");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto where = "edges[" + std::to_string(k) + "]";
    if (!edges[k].is_array() || edges[k].size() != 2) fail(where + " must be a pair of vertex numbers");
    doc.edges.push_back({as_int(edges[k][0], where) - 1, as_int(edges[k][1], where) - 1});
  }

  const json& coords = require(j, "coordinates", "document");
  if (!coords.is_array() || static_cast<int>(coords.size()) != doc.vertex_count)
    fail("coordinates must list " + std::to_string(doc.vertex_count) + " points");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto where = "coordinates[" + std::to_string(i) + "]";
    if (!coords[i].is_array() || static_cast<int>(coords[i].size()) != doc.dimension)
      fail(where + " must have " + std::to_string(doc.dimension) + " components");
    std::vector<double> p;
    for (std::size_t k = 0; k < coords[i].size(); ++k) p.push_back(as_double(coords[i][k], where));
    doc.coordinates.push_back(std::move(p));
  }

  const json& group = require(j, "group", "document");
  if (!group.is_object()) fail("group must be an object");
  reject_unknown(group, {"kind", "order", "axis", "mirror_normal"}, "group");
  const json& kind = require(group, "kind", "group");
  if (!kind.is_string()) fail("group.kind must be a string");
  try {
    doc.group.kind = group_kind_from_string(kind.get<std::string>());
  } catch (const InvalidArgument& e) {
    fail(std::string("group.kind: ") + e.what());
  }
  if (doc.group.kind == GroupKind::Cm || doc.group.kind == GroupKind::Cmv)
    doc.group.order = as_int(require(group, "order", "group"), "group.order");
  else if (group.contains("order"))
    fail("group.order applies to Cm and Cmv only");
  if (auto it = group.find("axis"); it != group.end()) doc.group.axis = as_vector(*it, "group.axis");
  if (auto it = group.find("mirror_normal"); it != group.end())
    doc.group.mirror_normal = as_vector(*it, "group.mirror_normal");

  const json& phi = require(j, "phi", "document");
  if (!phi.is_object()) fail("phi must be an object mapping generators to cycle notation");
  for (auto it = phi.begin(); it != phi.end(); ++it) {
    if (!it.value().is_string()) fail("phi." + it.key() + " must be a cycle-notation string");
    try {
      doc.phi[it.key()] = parse_cycle_notation(it.value().get<std::string>(), doc.vertex_count);
    } catch (const InvalidArgument& e) {
      fail("phi." + it.key() + ": " + e.what());
    }
  }

  if (auto it = j.find("options"); it != j.end()) {
    if (!it->is_object()) fail("options must be an object");
    reject_unknown(*it, {"rank_tolerance", "seed", "trials", "radius", "generic_sample"}, "options");
    if (auto o = it->find("rank_tolerance"); o != it->end()) {
      doc.options.rank_tolerance = as_double(*o, "options.rank_tolerance");
      if (!(*doc.options.rank_tolerance > 0.0)) fail("options.rank_tolerance must be positive");
    }
    if (auto o = it->find("seed"); o != it->end()) {
      if (!o->is_number_unsigned()) fail("options.seed must be a non-negative integer");
      doc.options.seed = o->get<std::uint64_t>();
    }
    if (auto o = it->find("trials"); o != it->end()) {
      doc.options.trials = as_int(*o, "options.trials");
      if (*doc.options.trials < 0) fail("options.trials must be non-negative");
    }
    if (auto o = it->find("radius"); o != it->end()) {
      doc.options.radius = as_double(*o, "options.radius");
      if (!(*doc.options.radius > 0.0)) fail("options.radius must be positive");
    }
    if (auto o = it->find("generic_sample"); o != it->end()) {
      if (!o->is_boolean()) fail("options.generic_sample must be a boolean");
      doc.options.generic_sample = o->get<bool>();
    }
  }
  return doc;
}

FrameworkDocument parse_framework_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(what, line, column);
  }
  FrameworkDocument doc = from_json(j);

  Graph graph;
  try {
    graph = doc.graph();
  } catch (const InvalidArgument& e) {
    fail(std::string("edges: ") + e.what());
  }
  SymmetryGroup group;
  try {
    group = doc.symmetry_group();
  } catch (const InvalidArgument& e) {
    fail(std::string("group: ") + e.what());
  }
  const auto gens = group.generators();
  std::set<std::string> expected;
  for (int g : gens) expected.insert(group.generator_label(g));
  for (const auto& [label, perm] : doc.phi)
    if (!expected.count(label)) fail("phi: '" + label + "' is not a generator of " + group.schoenflies());
  for (const auto& label : expected)
    if (!doc.phi.count(label)) fail("phi: missing image of generator '" + label + "'");

  const auto issues = check_type_map(graph, doc.type_map());
  if (!issues.empty()) throw ValidationError(issues.front().message);
  return doc;
}

std::string write_framework_file(const FrameworkDocument& doc) { return canonical_json(to_json(doc)); }

FrameworkDocument make_document(const Graph& graph, const Configuration& config, const TypeMap& phi) {
  FrameworkDocument doc;
  const auto& g = phi.group();
  doc.dimension = config.dim();
  doc.vertex_count = graph.vertex_count();
  doc.edges = graph.edges();
  for (int i = 0; i < config.point_count(); ++i) {
    const auto p = config.point(i);
    doc.coordinates.emplace_back(p.data(), p.data() + p.size());
  }
  doc.group.kind = g.kind();
  doc.group.order = g.rotation_order();
  doc.group.axis = g.geometry().axis;
  doc.group.mirror_normal = g.geometry().mirror_normal;
  for (int gen : g.generators()) doc.phi[g.generator_label(gen)] = phi[gen];
  return doc;
}

}  // namespace symflex
