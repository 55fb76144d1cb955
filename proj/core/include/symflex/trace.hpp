#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symflex/block_rigidity.hpp"
#include "symflex/certify.hpp"

namespace symflex {

struct FrameDiagnostics {
  double edge_drift = 0.0;         ///< max_e |f_e(q) - f_e(p)|
  double symmetry_residual = 0.0;  ///< max_x ||H_e(x) q - q||
  double gauge_drift = 0.0;        ///< norm of the step's component in W_e^(1) of the previous frame
  double step = 0.0;               ///< ||q_k - q_{k-1}||
  int corrector_iterations = 0;
  int flex_dimension = 0;          ///< nullity of the gauge-fixed Jacobian at the frame
  bool singular = false;           ///< flex dimension differs from the first frame
  bool event = false;              ///< inserted by monitor event location
};

struct FlexPath {
  std::vector<Configuration> frames;
  std::vector<Eigen::VectorXd> tangents;  ///< unit tangent in U at each frame
  std::vector<FrameDiagnostics> diagnostics;
  double step_size = 0.0;
  bool overridden = false;  ///< traced without a finite-symmetry-preserving-flex certificate
};

struct TraceOptions {
  int steps = 50;
  double step_size = 0.02;
  /// Trace even when the decision is not finite-symmetry-preserving-flex. Without a fully
  /// symmetric flex the tracer steps along the weakest direction in U.
  bool override_gate = false;
  int max_iterations = 25;
  double min_step_fraction = 1.0 / 1024.0;  ///< floor for step halving, relative to step_size
  /// Scalar function of the configuration; a sign change between frames
  /// inserts an extra frame at its root.
  std::function<double(const Configuration&)> monitor;
  double monitor_tolerance = 1e-12;
  /// Initial direction; must lie in the flex space. Defaults to tangent_flex.
  std::optional<Eigen::VectorXd> initial_tangent;
  CertifyPolicy policy;
};

/// Deterministic unit vector in ker(R~_1) orthogonal to W_e^(1); first
/// nonzero coordinate positive. Throws InvalidArgument when there is no fully
/// symmetric flex.
Eigen::VectorXd tangent_flex(const SymmetryContext& ctx, const Configuration& config, const Tolerances& tol = {});
Eigen::VectorXd tangent_flex(const Framework& fw, const TypeMap& phi, const Tolerances& tol = {});

/// Predictor-corrector continuation inside U. Each step solves
///   f_G(q) = f_G(p),  W^T (q - q_k) = 0,  ||q - q_k|| = h
/// by Gauss-Newton from q_k + h t_k, where W spans the symmetric rigid
/// motions at q_k. Throws InvalidArgument when the gate is closed and
/// TraceError when the corrector fails at the minimum step.
FlexPath trace_flex(const SymmetryContext& ctx, const Configuration& config, const TraceOptions& options);
FlexPath trace_flex(const Framework& fw, const TypeMap& phi, int steps, double step_size, bool override_gate = false);

struct NonCongruenceWitness {
  int first = 0;   ///< 0-based vertex indices of a non-edge pair
  int second = 0;
  double change = 0.0;  ///< max over frames of | ||q_i - q_j|| - ||p_i - p_j|| |
  int frame = 0;
};

struct PathReport {
  double max_edge_drift = 0.0;
  int worst_edge_frame = 0;
  double max_symmetry_residual = 0.0;
  int worst_symmetry_frame = 0;
  double edge_tolerance = 0.0;      ///< 1e-8 * scale
  double symmetry_tolerance = 0.0;  ///< 1e-10
  double witness_threshold = 0.0;
  std::optional<NonCongruenceWitness> witness;
  std::vector<int> bad_frames;      ///< frames over the edge or symmetry tolerance
  bool constraints_ok = false;
  bool flex_realized = false;
  std::string flag;                 ///< empty, "rigid motion, not a flex", or "no flex realized"
};

PathReport path_validate(const FlexPath& path, const Framework& fw, const TypeMap& phi,
                         double witness_relative = 1e-6);

}  // namespace symflex
