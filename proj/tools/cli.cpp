#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "symflex/document.hpp"
#include "symflex/error.hpp"
#include "symflex/examples.hpp"
#include "symflex/report.hpp"

namespace symflex::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

std::string num(const json& j) {
  if (j.is_number_float()) return format_number(j.get<double>());
  return j.dump();
}

std::string str(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render_validation(const json& j, std::ostream& out) {
  out << "framework: " << j["vertex_count"] << " vertices, " << j["edge_count"] << " edges, dimension "
      << j["dimension"] << ", group " << str(j["group"]) << "\n";
  out << "symmetry residual: " << num(j["max_residual"]) << " (tolerance " << num(j["tolerance"]) << ")\n";
  for (const auto& issue : j["issues"]) out << "  " << str(issue["kind"]) << ": " << str(issue["message"]) << "\n";
  if (!j["zero_length_edges"].empty()) out << "zero-length edges: " << j["zero_length_edges"].dump() << "\n";
  out << (j["valid"].get<bool>() ? "valid" : "invalid") << "\n";
}

void render_analysis(const json& j, std::ostream& out) {
  out << "framework: " << j["vertex_count"] << " vertices, " << j["edge_count"] << " edges, dimension "
      << j["dimension"] << ", group " << str(j["group"]) << "\n";
  const auto& r = j["rigidity"];
  out << "rigidity matrix rank " << r["rank"] << " of expected " << r["expected_rank"] << ": " << str(r["verdict"])
      << "\n";
  out << "rank tolerance (relative): " << num(j["rank_tolerance"]) << "\n";
  out << "dim U: " << j["fixed_subspace_dim"] << ", spanning: " << (j["spanning"].get<bool>() ? "yes" : "no") << "\n";
  out << "blocks (off-block residual " << num(j["off_block_residual"]) << "):\n";
  for (const auto& b : j["blocks"])
    out << "  " << str(b["irrep"]) << " (degree " << b["degree"] << "): " << b["rows"] << " x " << b["cols"]
        << ", rank " << b["rank"] << "\n";
  out << "Maxwell counts:\n  irrep  dim_Vi  dim_Ve  dim_We  slack\n";
  for (const auto& m : j["maxwell"]) {
    char line[128];
    std::snprintf(line, sizeof line, "  %-5s  %6d  %6d  %6d  %5d\n", str(m["irrep"]).c_str(), m["dim_vi"].get<int>(),
                  m["dim_ve"].get<int>(), m["dim_we"].get<int>(), m["slack"].get<int>());
    out << line;
  }
  out << "restricted rank: G " << j["restricted_rank"]["G"] << ", K_n " << j["restricted_rank"]["K_n"] << "\n";
  out << "fully symmetric flexes: " << j["fully_symmetric_flexes"] << "\n";
  out << "fully symmetric self-stresses: " << j["fully_symmetric_self_stresses"] << "\n";
}

void render_regularity(const char* name, const json& r, std::ostream& out) {
  out << "  " << name << ": " << (r["passed"].get<bool>() ? "pass" : "FAIL") << " (" << str(r["method"]);
  if (str(r["method"]) == "sampled")
    out << ", " << r["trials"] << " trials, radius " << num(r["radius"]) << ", rank at p " << r["rank_at_p"]
        << ", max sampled " << r["max_sampled_rank"] << ", increases " << r["rank_increases"];
  out << ")\n";
}

void render_certificate(const json& c, std::ostream& out) {
  out << "verdict: " << str(c["verdict"]);
  if (!c["theorem"].is_null()) out << " (" << str(c["theorem"]) << ")";
  out << "\n";
  out << "irrep " << c["irrep"] << " (" << str(c["irrep_name"]) << "), subspace dimension " << c["subspace_dim"] << "\n";
  out << "restricted ranks: G " << c["ranks"]["G"] << ", K_n " << c["ranks"]["K_n"] << "\n";
  out << "infinitesimal flexes: " << c["flex_count"] << ", fully symmetric self-stresses: " << c["self_stress_count"]
      << ", spanning: " << (c["spanning"].get<bool>() ? "yes" : "no") << "\n";
  out << "regularity:\n";
  render_regularity("G", c["regularity"]["G"], out);
  render_regularity("K_n", c["regularity"]["K_n"], out);
  out << "rank tolerance (relative): " << num(c["rank_tolerance"]) << ", seed " << c["seed"] << "\n";
  out << str(c["explanation"]) << "\n";
}

void render_trace(const json& j, std::ostream& out) {
  out << "frames: " << j["frame_count"] << ", step size " << num(j["step_size"])
      << (j["overridden"].get<bool>() ? " (override)" : "") << "\n";
  out << "max edge drift: " << num(j["max_edge_drift"]) << " (tolerance " << num(j["edge_tolerance"]) << ")\n";
  out << "max symmetry residual: " << num(j["max_symmetry_residual"]) << " (tolerance " << num(j["symmetry_tolerance"])
      << ")\n";
  if (!j["witness"].is_null())
    out << "non-congruence witness: pair " << j["witness"]["pair"].dump() << ", distance change "
        << num(j["witness"]["change"]) << " at frame " << j["witness"]["frame"] << " (threshold "
        << num(j["witness_threshold"]) << ")\n";
  else
    out << "non-congruence witness: none (threshold " << num(j["witness_threshold"]) << "): " << str(j["flag"]) << "\n";
  if (!j["singular_frames"].empty()) out << "singular frames: " << j["singular_frames"].dump() << "\n";
  if (!j["bad_frames"].empty()) out << "frames over tolerance: " << j["bad_frames"].dump() << "\n";
  if (j.contains("output")) out << "frames written to " << str(j["output"]) << "\n";
}

void emit(const json& j, bool as_json, void (*render)(const json&, std::ostream&), std::ostream& out) {
  if (as_json)
    out << canonical_json(j);
  else
    render(j, out);
}

int irrep_index(const std::string& spec, const SymmetryContext& ctx) {
  if (!spec.empty() && std::all_of(spec.begin(), spec.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    return std::stoi(spec) - 1;
  const int t = ctx.irreps().find(spec);
  if (t < 0) throw InvalidArgument("unknown irrep '" + spec + "'");
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry-adapted rigidity analysis of bar-joint frameworks", "symflex"};
  app.require_subcommand(1);

  std::string file;
  bool as_json = false;

  auto* validate = app.add_subcommand("validate", "Check phi and the symmetry equation");
  validate->add_option("file", file, "Framework document (.fw)")->required();
  validate->add_flag("--json", as_json, "Machine-readable report");

  auto* analyze = app.add_subcommand("analyze", "Ranks, block sizes and Maxwell counts");
  analyze->add_option("file", file, "Framework document (.fw)")->required();
  analyze->add_flag("--json", as_json, "Machine-readable report");

  std::string irrep = "1";
  auto* detect = app.add_subcommand("flex-detect", "Decide whether a symmetry-preserving finite flex exists");
  detect->add_option("file", file, "Framework document (.fw)")->required();
  detect->add_option("--irrep", irrep, "Irrep index (1-based) or name; 1 is fully symmetric");
  detect->add_flag("--json", as_json, "Machine-readable report");

  int steps = 50;
  double step_size = 0.02;
  std::string frames_out;
  bool force = false;
  auto* trace = app.add_subcommand("trace", "Trace the symmetry-preserving flex");
  trace->add_option("file", file, "Framework document (.fw)")->required();
  trace->add_option("--steps", steps, "Number of continuation steps")->check(CLI::NonNegativeNumber);
  trace->add_option("--step-size", step_size, "Step length")->check(CLI::PositiveNumber);
  trace->add_option("--out", frames_out, "Frame export (.json or .csv)");
  trace->add_flag("--force", force, "Trace without a finite-symmetry-preserving-flex verdict");
  trace->add_flag("--json", as_json, "Machine-readable report");

  std::string name;
  std::uint64_t seed = 1;
  int n = 3;
  std::string doc_out;
  auto* example = app.add_subcommand("example", "Write a built-in example document");
  example->add_option("name", name, "Example name")->required()->check(CLI::IsMember(builtin_example_names()));
  example->add_option("--seed", seed, "Seed for sampled coordinates");
  example->add_option("--n", n, "Size parameter of double-suspension")->check(CLI::PositiveNumber);
  example->add_option("--out", doc_out, "Output file (default: standard output)");

  std::vector<const char*> argv{"symflex"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (example->parsed()) {
      ExampleParams params;
      params.seed = seed;
      params.n = n;
      const std::string text = write_framework_file(builtin_example(name, params));
      if (doc_out.empty())
        out << text;
      else
        write_file(doc_out, text);
      return kOk;
    }

    const Tolerances base = Tolerances::from_environment();
    const FrameworkDocument doc = parse_framework_file(read_file(file));
    const Tolerances tol = doc.tolerances(base);

    if (validate->parsed()) {
      const json j = validation_json(doc, tol);
      emit(j, as_json, render_validation, out);
      return j["valid"].get<bool>() ? kOk : kInvalid;
    }

    const json validation = validation_json(doc, tol);
    if (!validation["valid"].get<bool>()) {
      err << "symflex: validation failed: " << str(validation["issues"][0]["message"]) << "\n";
      return kInvalid;
    }

    if (analyze->parsed()) {
      emit(analysis_json(doc, tol), as_json, render_analysis, out);
      return kOk;
    }

    const Framework fw = doc.framework();
    const SymmetryContext ctx(fw.graph(), doc.type_map());
    const CertifyPolicy policy = doc.policy(base);

    if (detect->parsed()) {
      const int t = irrep_index(irrep, ctx);
      const auto cert = subrep_flex_decision(ctx, fw.config(), t, policy);
      json j = certificate_json(cert);
      j["command"] = "flex-detect";
      emit(j, as_json, render_certificate, out);
      return cert.verdict == FlexVerdict::Inconclusive ? kInconclusive : kOk;
    }

    if (trace->parsed()) {
      std::string format;
      if (!frames_out.empty()) {
        const auto dot = frames_out.rfind('.');
        format = dot == std::string::npos ? "" : frames_out.substr(dot + 1);
        if (format != "json" && format != "csv") {
          err << "symflex: --out must end in .json or .csv\n";
          return kUsage;
        }
      }
      const auto cert = finite_flex_decision(ctx, fw.config(), policy);
      if (cert.verdict != FlexVerdict::FiniteFlex && !force) {
        json j;
        j["command"] = "trace";
        j["gated"] = true;
        j["certificate"] = certificate_json(cert);
        if (as_json) {
          out << canonical_json(j);
        } else {
          out << "trace refused: verdict is " << to_string(cert.verdict) << ", not finite-symmetry-preserving-flex (use --force to override)\n";
          render_certificate(j["certificate"], out);
        }
        return kInconclusive;
      }
      TraceOptions options;
      options.steps = steps;
      options.step_size = step_size;
      options.override_gate = force;
      options.policy = policy;
      FlexPath path;
      try {
        path = trace_flex(ctx, fw.config(), options);
      } catch (const TraceError& e) {
        err << "symflex: " << e.what() << "\n";
        return kInconclusive;
      }
      const auto report = path_validate(path, fw, doc.type_map());
      json j = path_summary_json(path, report);
      j["command"] = "trace";
      j["gated"] = false;
      if (!frames_out.empty()) {
        write_file(frames_out, format == "json" ? canonical_json(frames_json(path)) : frames_csv(path));
        j["output"] = frames_out;
      }
      emit(j, as_json, render_trace, out);
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "symflex: parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "symflex: validation failed: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    err << "symflex: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace symflex::cli
