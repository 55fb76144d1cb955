#include "symflex/report.hpp"

#include <cstdio>

#include "symflex/block_rigidity.hpp"
#include "symflex/error.hpp"

namespace symflex {

using nlohmann::json;

std::string format_number(double value) {
  // Same rendering as canonical_json.
  const std::string s = canonical_json(json(value));
  return s.substr(0, s.size() - 1);
}

namespace {

std::string issue_kind(TypeMapIssue::Kind kind) {
  switch (kind) {
    case TypeMapIssue::Kind::NotAutomorphism: return "not-automorphism";
    case TypeMapIssue::Kind::NotHomomorphism: return "not-homomorphism";
    case TypeMapIssue::Kind::SymmetryResidual: return "symmetry-residual";
    case TypeMapIssue::Kind::DimensionMismatch: return "dimension-mismatch";
  }
  return "?";
}

json regularity_json(const RegularityEvidence& ev) {
  return {{"passed", ev.passed},
          {"method", to_string(ev.method)},
          {"trials", ev.trials},
          {"radius", ev.radius},
          {"rank_at_p", ev.rank_at_p},
          {"max_sampled_rank", ev.max_sampled_rank},
          {"rank_increases", ev.rank_increases}};
}

}  // namespace

json validation_json(const FrameworkDocument& doc, const Tolerances& tol) {
  const Framework fw = doc.framework();
  const TypeMap phi = doc.type_map();
  const auto v = validate_type_map(fw, phi, tol.symmetry_relative);
  json j;
  j["command"] = "validate";
  j["valid"] = v.valid;
  j["group"] = phi.group().schoenflies();
  j["dimension"] = doc.dimension;
  j["vertex_count"] = doc.vertex_count;
  j["edge_count"] = static_cast<int>(doc.edges.size());
  j["max_residual"] = v.max_residual;
  j["tolerance"] = v.tolerance;
  if (v.worst_element >= 0)
    j["worst"] = {{"element", phi.group().element(v.worst_element).label}, {"vertex", v.worst_vertex + 1}};
  json issues = json::array();
  for (const auto& issue : v.issues) {
    json i = {{"kind", issue_kind(issue.kind)}, {"message", issue.message}};
    if (issue.element >= 0) i["element"] = phi.group().element(issue.element).label;
    if (issue.vertex >= 0) i["vertex"] = issue.vertex + 1;
    if (issue.edge >= 0) i["edge"] = issue.edge + 1;
    if (issue.kind == TypeMapIssue::Kind::SymmetryResidual) i["residual"] = issue.residual;
    issues.push_back(i);
  }
  j["issues"] = issues;
  json zero = json::array();
  for (int k : fw.zero_length_edges()) zero.push_back(k + 1);
  j["zero_length_edges"] = zero;
  return j;
}

json analysis_json(const FrameworkDocument& doc, const Tolerances& tol) {
  const Framework fw = doc.framework();
  const TypeMap phi = doc.type_map();
  require_valid(fw, phi, tol.symmetry_relative);
  const SymmetryContext ctx(fw.graph(), phi);
  const auto& p = fw.config();

  json j;
  j["command"] = "analyze";
  j["group"] = phi.group().schoenflies();
  j["dimension"] = doc.dimension;
  j["vertex_count"] = doc.vertex_count;
  j["edge_count"] = static_cast<int>(doc.edges.size());
  j["rank_tolerance"] = tol.rank_relative;
  j["fixed_subspace_dim"] = static_cast<int>(ctx.fixed_basis().cols());

  const auto rigidity = infinitesimal_rigidity_test(fw, tol.rank_relative);
  j["rigidity"] = {{"rank", rigidity.rank.rank},
                   {"expected_rank", rigidity.expected_rank},
                   {"verdict", rigidity.verdict == RigidityVerdict::InfinitesimallyRigid ? "infinitesimally-rigid"
                                                                                        : "infinitesimally-flexible"}};

  const auto blocks = block_diagonalize(ctx, p, GraphChoice::G, tol);
  json block_list = json::array();
  json dims = json::array();
  for (const auto& b : blocks.blocks) {
    const int rows = static_cast<int>(b.block.rows());
    const int cols = static_cast<int>(b.block.cols());
    block_list.push_back({{"irrep", b.name}, {"degree", b.degree}, {"rows", rows}, {"cols", cols}, {"rank", b.rank.rank}});
    dims.push_back({rows, cols});
  }
  j["blocks"] = block_list;
  j["block_dims"] = dims;
  j["off_block_residual"] = blocks.off_block_residual;

  const auto maxwell = maxwell_counts(ctx, p, tol);
  json rows = json::array();
  for (const auto& r : maxwell.rows)
    rows.push_back({{"irrep", r.irrep}, {"dim_vi", r.dim_vi}, {"dim_ve", r.dim_ve}, {"dim_we", r.dim_we}, {"slack", r.slack}});
  j["maxwell"] = rows;
  j["spanning"] = maxwell.spanning;

  j["restricted_rank"] = {{"G", restricted_rank(ctx, p, GraphChoice::G, tol).rank},
                          {"K_n", restricted_rank(ctx, p, GraphChoice::Complete, tol).rank}};
  j["fully_symmetric_flexes"] = static_cast<int>(fully_symmetric_flexes(ctx, p, tol).cols());
  j["fully_symmetric_self_stresses"] = static_cast<int>(fully_symmetric_self_stresses(ctx, p, tol).cols());
  return j;
}

json certificate_json(const FlexCertificate& cert) {
  json j;
  j["verdict"] = to_string(cert.verdict);
  j["theorem"] = cert.route ? json(to_string(*cert.route)) : json(nullptr);
  j["irrep"] = cert.irrep + 1;
  j["irrep_name"] = cert.irrep_name;
  j["subspace_dim"] = cert.subspace_dim;
  j["ranks"] = {{"G", cert.rank_g}, {"K_n", cert.rank_complete}};
  j["flex_count"] = cert.flex_count;
  j["self_stress_count"] = cert.self_stress_count;
  j["spanning"] = cert.spanning;
  j["regularity"] = {{"G", regularity_json(cert.g_regularity)}, {"K_n", regularity_json(cert.complete_regularity)}};
  j["rank_tolerance"] = cert.rank_relative;
  j["seed"] = cert.seed;
  j["explanation"] = cert.explanation;
  return j;
}

json path_summary_json(const FlexPath& path, const PathReport& report) {
  json j;
  j["frame_count"] = static_cast<int>(path.frames.size());
  j["step_size"] = path.step_size;
  j["overridden"] = path.overridden;
  j["max_edge_drift"] = report.max_edge_drift;
  j["edge_tolerance"] = report.edge_tolerance;
  j["max_symmetry_residual"] = report.max_symmetry_residual;
  j["symmetry_tolerance"] = report.symmetry_tolerance;
  j["constraints_ok"] = report.constraints_ok;
  j["flex_realized"] = report.flex_realized;
  j["witness_threshold"] = report.witness_threshold;
  if (report.witness)
    j["witness"] = {{"pair", {report.witness->first + 1, report.witness->second + 1}},
                    {"change", report.witness->change},
                    {"frame", report.witness->frame}};
  else
    j["witness"] = nullptr;
  j["flag"] = report.flag;
  json bad = json::array();
  for (int k : report.bad_frames) bad.push_back(k);
  j["bad_frames"] = bad;
  json singular = json::array();
  json events = json::array();
  for (std::size_t k = 0; k < path.diagnostics.size(); ++k) {
    if (path.diagnostics[k].singular) singular.push_back(static_cast<int>(k));
    if (path.diagnostics[k].event) events.push_back(static_cast<int>(k));
  }
  j["singular_frames"] = singular;
  j["event_frames"] = events;
  return j;
}

json frames_json(const FlexPath& path) {
  json j;
  j["format"] = "symflex-frames";
  j["step_size"] = path.step_size;
  j["dimension"] = path.frames.empty() ? 0 : path.frames.front().dim();
  j["vertex_count"] = path.frames.empty() ? 0 : path.frames.front().point_count();
  json frames = json::array();
  for (const auto& q : path.frames) {
    json points = json::array();
    for (int i = 0; i < q.point_count(); ++i) {
      json pt = json::array();
      const auto v = q.point(i);
      for (Eigen::Index k = 0; k < v.size(); ++k) pt.push_back(v(k));
      points.push_back(pt);
    }
    frames.push_back(points);
  }
  j["frames"] = frames;
  return j;
}

std::string frames_csv(const FlexPath& path) {
  std::string out = "frame";
  if (!path.frames.empty()) {
    const auto& f = path.frames.front();
    static const char* axes[] = {"x", "y", "z"};
    for (int i = 0; i < f.point_count(); ++i)
      for (int k = 0; k < f.dim(); ++k) out += std::string(",") + (k < 3 ? axes[k] : "c") + std::to_string(i + 1);
  }
  out += "\n";
  for (std::size_t k = 0; k < path.frames.size(); ++k) {
    out += std::to_string(k);
    const auto& flat = path.frames[k].flat();
    for (Eigen::Index i = 0; i < flat.size(); ++i) out += "," + format_number(flat(i));
    out += "\n";
  }
  return out;
}

}  // namespace symflex
