#include "symflex/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symflex/error.hpp"

namespace symflex {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kSignThreshold = 1e-9;

void normalize_sign(VectorXd& v) {
  const double cutoff = kSignThreshold * v.norm();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > cutoff) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

double symmetry_residual(const Representation& external, const VectorXd& q) {
  double worst = 0.0;
  for (const auto& h : external.matrices) worst = std::max(worst, (h * q - q).norm());
  return worst;
}

double edge_drift(const Graph& graph, const Configuration& q, const VectorXd& target) {
  return (edge_function(graph, q) - target).cwiseAbs().maxCoeff();
}

struct StepResult {
  bool converged = false;
  VectorXd c;
  int iterations = 0;
};

class Tracer {
public:
  Tracer(const SymmetryContext& ctx, const Configuration& start, const TraceOptions& options)
      : ctx_(ctx), options_(options), basis_(ctx.fixed_basis()), dim_(start.dim()),
        target_(edge_function(ctx.graph(), start)), scale_(start.scale()) {
    residual_tol_ = 1e-12 * std::max(1.0, scale_ * scale_);
    stagnation_tol_ = 1e-10 * std::max(1.0, scale_ * scale_);
  }

  Configuration config(const VectorXd& c) const { return Configuration(dim_, basis_ * c); }

  // Symmetric rigid motions at q in U coordinates.
  MatrixXd gauge(const VectorXd& c) const {
    const MatrixXd w = symmetric_rigid_motions(ctx_, config(c), 0, options_.policy.tol).basis;
    return basis_.transpose() * w;
  }

  MatrixXd flex_jacobian(const VectorXd& c, const MatrixXd& gauge_c) const {
    const MatrixXd r = 2.0 * rigidity_matrix(ctx_.graph(), config(c)) * basis_;
    MatrixXd k(r.rows() + gauge_c.cols(), r.cols());
    k << r, gauge_c.transpose();
    return k;
  }

  // Kernel of the gauge-fixed Jacobian; at least one column (the weakest direction).
  MatrixXd flex_space(const VectorXd& c, const MatrixXd& gauge_c, int* nullity) const {
    const MatrixXd k = flex_jacobian(c, gauge_c);
    Eigen::JacobiSVD<MatrixXd> svd(k, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cutoff = options_.policy.tol.rank_relative * (s.size() > 0 ? s(0) : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > cutoff) ++rank;
    *nullity = static_cast<int>(k.cols()) - rank;
    return svd.matrixV().rightCols(std::max(1, *nullity));
  }

  VectorXd continue_tangent(const MatrixXd& space, const VectorXd& previous) const {
    VectorXd t = space * (space.transpose() * previous);
    if (t.norm() < 1e-6) t = space.col(space.cols() - 1);
    t.normalize();
    if (t.dot(previous) < 0.0) t = -t;
    return t;
  }

  // Without the arc-length row the corrections are plain least-norm
  // Gauss-Newton steps, which fall back onto p when there is no flex.
  StepResult corrector(const VectorXd& base, const VectorXd& tangent, const MatrixXd& gauge_c, double h) const {
    StepResult out;
    VectorXd c = base + h * tangent;
    const Eigen::Index m = ctx_.graph().edge_count();
    const Eigen::Index w = gauge_c.cols();
    const Eigen::Index a = arclength_ ? 1 : 0;
    double first = -1.0;
    double best = std::numeric_limits<double>::infinity();
    VectorXd best_c = c;
    for (int it = 0; it <= options_.max_iterations; ++it) {
      const Configuration q = config(c);
      VectorXd r(m + w + a);
      r.head(m) = edge_function(ctx_.graph(), q) - target_;
      r.segment(m, w) = gauge_c.transpose() * (c - base);
      if (arclength_) r(m + w) = (c - base).squaredNorm() - h * h;
      const double norm = r.cwiseAbs().maxCoeff();
      if (!std::isfinite(norm)) break;
      if (norm < best) {
        best = norm;
        best_c = c;
      }
      if (first < 0.0) first = std::max(norm, residual_tol_);
      out.iterations = it;
      if (norm <= residual_tol_) {
        out.converged = true;
        out.c = c;
        return out;
      }
      if (norm > 1e3 * first || it == options_.max_iterations) break;
      MatrixXd j(m + w + a, c.size());
      j.topRows(m) = 2.0 * rigidity_matrix(ctx_.graph(), q) * basis_;
      j.middleRows(m, w) = gauge_c.transpose();
      if (arclength_) j.bottomRows(1) = 2.0 * (c - base).transpose();
      Eigen::JacobiSVD<MatrixXd> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
      svd.setThreshold(1e-12);
      c -= svd.solve(r);
    }
    if (best <= stagnation_tol_) {
      out.converged = true;
      out.c = best_c;
    }
    return out;
  }

  FrameDiagnostics diagnostics(const VectorXd& c, const VectorXd& previous, const MatrixXd& previous_gauge,
                               int nullity, int iterations) const {
    FrameDiagnostics d;
    const Configuration q = config(c);
    d.edge_drift = edge_drift(ctx_.graph(), q, target_);
    d.symmetry_residual = symmetry_residual(ctx_.external(), q.flat());
    d.gauge_drift = previous_gauge.cols() > 0 ? (previous_gauge.transpose() * (c - previous)).norm() : 0.0;
    d.step = (c - previous).norm();
    d.corrector_iterations = iterations;
    d.flex_dimension = nullity;
    return d;
  }

  void set_arclength(bool on) { arclength_ = on; }

private:
  const SymmetryContext& ctx_;
  const TraceOptions& options_;
  const MatrixXd& basis_;
  int dim_;
  VectorXd target_;
  double scale_;
  double residual_tol_;
  double stagnation_tol_;
  bool arclength_ = true;
};

}  // namespace

VectorXd tangent_flex(const SymmetryContext& ctx, const Configuration& config, const Tolerances& tol) {
  const MatrixXd flexes = fully_symmetric_flexes(ctx, config, tol);
  if (flexes.cols() == 0) throw InvalidArgument("no fully-symmetric flex: ker(R~_1) is spanned by symmetric rigid motions");
  VectorXd t = flexes.col(0).normalized();
  normalize_sign(t);
  return t;
}

VectorXd tangent_flex(const Framework& fw, const TypeMap& phi, const Tolerances& tol) {
  return tangent_flex(SymmetryContext(fw.graph(), phi), fw.config(), tol);
}

FlexPath trace_flex(const SymmetryContext& ctx, const Configuration& config, const TraceOptions& options) {
  if (options.steps < 0) throw InvalidArgument("steps must be non-negative");
  if (!(options.step_size > 0.0)) throw InvalidArgument("step size must be positive");
  if (ctx.fixed_basis().cols() == 0) throw InvalidArgument("the fixed subspace U is zero-dimensional");

  const auto cert = finite_flex_decision(ctx, config, options.policy);
  const bool certified = cert.verdict == FlexVerdict::FiniteFlex;
  if (!certified && !options.override_gate)
    throw InvalidArgument("tracing needs a finite-symmetry-preserving-flex verdict, got " + to_string(cert.verdict) +
                          "; use the override flag to trace anyway");

  FlexPath path;
  path.step_size = options.step_size;
  path.overridden = !certified;

  const MatrixXd& basis = ctx.fixed_basis();
  Tracer tracer(ctx, config, options);
  tracer.set_arclength(cert.flex_count > 0);
  VectorXd c = basis.transpose() * config.flat();
  MatrixXd gauge_c = tracer.gauge(c);
  int nullity = 0;
  const MatrixXd space = tracer.flex_space(c, gauge_c, &nullity);
  const int initial_nullity = nullity;

  VectorXd tangent;
  if (options.initial_tangent) {
    if (options.initial_tangent->size() != config.flat().size())
      throw InvalidArgument("initial tangent has the wrong length");
    tangent = (basis.transpose() * *options.initial_tangent).normalized();
  } else if (cert.flex_count > 0) {
    tangent = basis.transpose() * tangent_flex(ctx, config, options.policy.tol);
  } else {
    VectorXd t = basis * space.col(space.cols() - 1);
    normalize_sign(t);
    tangent = basis.transpose() * t;
  }
  tangent.normalize();

  path.frames.push_back(config);
  path.tangents.push_back(basis * tangent);
  path.diagnostics.push_back(tracer.diagnostics(c, c, MatrixXd(c.size(), 0), nullity, 0));

  auto push_frame = [&](const VectorXd& next, const VectorXd& base, const MatrixXd& base_gauge, const VectorXd& prev_tangent,
                        int iterations, bool event, VectorXd* out_tangent, MatrixXd* out_gauge) {
    MatrixXd g = tracer.gauge(next);
    int null_next = 0;
    const MatrixXd sp = tracer.flex_space(next, g, &null_next);
    VectorXd t = tracer.continue_tangent(sp, prev_tangent);
    auto d = tracer.diagnostics(next, base, base_gauge, null_next, iterations);
    d.singular = null_next != initial_nullity;
    d.event = event;
    path.frames.push_back(tracer.config(next));
    path.tangents.push_back(basis * t);
    path.diagnostics.push_back(d);
    if (out_tangent) *out_tangent = t;
    if (out_gauge) *out_gauge = g;
  };

  const double floor = options.step_size * options.min_step_fraction;
  double h = options.step_size;
  for (int step = 1; step <= options.steps; ++step) {
    StepResult result;
    while (true) {
      result = tracer.corrector(c, tangent, gauge_c, h);
      if (result.converged) break;
      h *= 0.5;
      if (h < floor)
        throw TraceError("corrector failed to converge at the minimum step size " + std::to_string(floor) +
                             "; the path may be singular here",
                         path.frames.size() - 1);
    }

    if (options.monitor) {
      const double g0 = options.monitor(tracer.config(c));
      const double g1 = options.monitor(tracer.config(result.c));
      if (g0 * g1 < 0.0 && std::abs(g0) > options.monitor_tolerance && std::abs(g1) > options.monitor_tolerance) {
        // Illinois variant of regula falsi on the step length.
        double a = 0.0, ga = g0, b = h, gb = g1;
        std::optional<StepResult> root;
        for (int it = 0; it < 100; ++it) {
          const double hm = (a * gb - b * ga) / (gb - ga);
          auto trial = tracer.corrector(c, tangent, gauge_c, hm);
          if (!trial.converged) break;
          const double gm = options.monitor(tracer.config(trial.c));
          root = trial;
          if (std::abs(gm) <= options.monitor_tolerance) break;
          if (gm * gb < 0.0) {
            a = b;
            ga = gb;
          } else {
            ga *= 0.5;
          }
          b = hm;
          gb = gm;
        }
        if (root) push_frame(root->c, c, gauge_c, tangent, root->iterations, true, nullptr, nullptr);
      }
    }

    VectorXd next_tangent;
    MatrixXd next_gauge;
    push_frame(result.c, c, gauge_c, tangent, result.iterations, false, &next_tangent, &next_gauge);
    if (options.monitor && std::abs(options.monitor(path.frames.back())) <= options.monitor_tolerance)
      path.diagnostics.back().event = true;
    c = result.c;
    tangent = next_tangent;
    gauge_c = next_gauge;
    h = std::min(options.step_size, 2.0 * h);
  }
  return path;
}

FlexPath trace_flex(const Framework& fw, const TypeMap& phi, int steps, double step_size, bool override_gate) {
  TraceOptions options;
  options.steps = steps;
  options.step_size = step_size;
  options.override_gate = override_gate;
  return trace_flex(SymmetryContext(fw.graph(), phi), fw.config(), options);
}

PathReport path_validate(const FlexPath& path, const Framework& fw, const TypeMap& phi, double witness_relative) {
  if (path.frames.empty()) throw InvalidArgument("path has no frames");
  const Graph& graph = fw.graph();
  const Configuration& p = fw.config();
  const double scale = p.scale();
  const Representation external = external_representation(phi, graph, p.dim());
  const VectorXd target = edge_function(graph, p);

  PathReport report;
  report.edge_tolerance = 1e-8 * scale;
  report.symmetry_tolerance = 1e-10 * std::max(1.0, scale);
  report.witness_threshold = witness_relative * scale;

  const int n = graph.vertex_count();
  double moved = 0.0;
  for (std::size_t k = 0; k < path.frames.size(); ++k) {
    const auto& q = path.frames[k];
    if (q.dim() != p.dim() || q.point_count() != n)
      throw InvalidArgument("frame " + std::to_string(k) + " does not match the framework");
    const double drift = graph.edge_count() > 0 ? edge_drift(graph, q, target) : 0.0;
    const double sym = symmetry_residual(external, q.flat());
    if (drift > report.max_edge_drift) {
      report.max_edge_drift = drift;
      report.worst_edge_frame = static_cast<int>(k);
    }
    if (sym > report.max_symmetry_residual) {
      report.max_symmetry_residual = sym;
      report.worst_symmetry_frame = static_cast<int>(k);
    }
    if (drift > report.edge_tolerance || sym > report.symmetry_tolerance) report.bad_frames.push_back(static_cast<int>(k));
    moved = std::max(moved, (q.flat() - p.flat()).norm());
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (graph.has_edge(i, j)) continue;
        const double change = std::abs((q.point(i) - q.point(j)).norm() - (p.point(i) - p.point(j)).norm());
        if (change > report.witness_threshold && (!report.witness || change > report.witness->change))
          report.witness = NonCongruenceWitness{i, j, change, static_cast<int>(k)};
      }
    }
  }
  report.constraints_ok = report.bad_frames.empty();
  report.flex_realized = report.witness.has_value();
  if (!report.witness) report.flag = moved > report.witness_threshold ? "rigid motion, not a flex" : "no flex realized";
  return report;
}

}  // namespace symflex
